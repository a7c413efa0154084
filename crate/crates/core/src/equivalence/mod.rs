//! Zero and equivalence tests for word and tree automata, with witnesses.
//!
//! Word automata use forward-space closure in breadth-first order, so the first basis
//! vector that does not vanish on η comes from a shortest nonzero word. The rank test of
//! the linear characterisation is kept as an independent cross-check for small automata.
//!
//! Tree automata use multilinear closure: applying each symbol only to tuples of basis
//! vectors suffices because (Σ c_i v_i) ⊗ w · μ(σ) = Σ c_i (v_i ⊗ w)·μ(σ), so every μ(t)
//! stays in the span. Candidates are processed by increasing term size, which makes the
//! reported witness a smallest term.

mod closure;
mod rank;
mod verdict;

pub use closure::{
    mta_equiv, mta_equiv_randomised, mta_is_zero, mta_reach_basis, mwa_equiv, mwa_equiv_with,
    mwa_forward_basis, mwa_is_zero_basis, random_term, EquivOptions, TermBasisVector, WordBasisVector,
};
pub use rank::{mwa_equiv_rank, mwa_is_zero_rank, rank_system};
pub use verdict::{EquivVerdict, Method, Witness};

use crate::automata::AutomataError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivError {
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}
