//! Multiplicity word and tree automata over the rationals and their series operations.

mod mta;
mod mwa;
mod term;

pub use mta::{Mta, MtaJson};
pub use mwa::{Mwa, MwaJson};
pub use term::Term;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomataError {
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("alphabet mismatch: {0}")]
    Alphabet(String),
    #[error("shape: {0}")]
    Shape(String),
    #[error("arity: {0}")]
    Arity(String),
    #[error("term: {0}")]
    Term(String),
    #[error("automaton JSON: {0}")]
    Json(String),
}
