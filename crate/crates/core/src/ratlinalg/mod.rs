//! Exact rational scalars, dense matrices, polynomials and the sparse helpers the
//! automata are built on.

mod matrix;
mod poly;
mod rational;
mod sparse;

pub use matrix::{companion, newton_charpoly_equal, power_traces, QMatrix};
pub use poly::QPoly;
pub use rational::Rational;
pub use sparse::{EchelonBasis, SparseMatrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("matrix is {0}x{1}, expected square")]
    NotSquare(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("polynomial is not monic of degree at least one")]
    NotMonic,
}
