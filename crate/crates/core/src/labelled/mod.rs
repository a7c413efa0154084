//! Labelled and bilabelled graphs, the generator alphabet, the three composition operations
//! with their homomorphism-tensor counterparts, and decoding of generator words and terms.
//!
//! Words compose left to right as written with `1` at the right end:
//! `A12 J1 A12` decodes to A12·(J1·(A12·1)).

mod graphs;
mod letter;
mod tensor;

pub use graphs::{
    generator, generators, glue, pw_decode, series, series_bi, soe, tw_decode, BilabelledGraph,
    Generators, LabelledGraph,
};
pub use letter::{format_word, letters, parse_word, Letter, GLUE_SYMBOL, LEAF_SYMBOL, MAX_LABELS};
pub use tensor::{hom_matrix, hom_tensor, index_tuple, tuple_index, HomMatrix, HomTensor};

use crate::graphcore::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabelledError {
    #[error("k must be at least 1")]
    NoLabels,
    #[error("at most 9 labels are supported, got {0}")]
    TooManyLabels(usize),
    #[error("label arity mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error("invalid labels: {0}")]
    Label(String),
    #[error("invalid generator letter {0:?}")]
    Letter(String),
    #[error("invalid term: {0}")]
    Term(String),
    #[error("mode mismatch: {0}")]
    Mode(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
