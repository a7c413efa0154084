pub mod automata;
pub mod equivalence;
pub mod graphcore;
pub mod homind;
pub mod labelled;
pub mod ratlinalg;
pub mod reductions;
