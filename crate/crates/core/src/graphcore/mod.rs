//! Finite graphs, the graph families used by the reductions, brute-force homomorphism
//! counting, small-graph isomorphism and the CFI construction.

mod cfi;
mod graph;
mod hom;
mod iso;
mod ops;
mod weighted;
mod width;

pub use cfi::cfi;
pub use graph::{Graph, GraphJson};
pub use hom::{hom_count, hom_count_pinned};
pub use iso::{find_isomorphism, is_isomorphic, is_isomorphic_bounded, DEFAULT_ISO_BOUND};
pub use ops::{
    categorical_product, combinations, complement, copies, disjoint_union, disjoint_union_all,
    make_complete, make_cycle, make_directed_path, make_kneser, make_path, make_star,
};
pub use weighted::WeightedDigraph;
pub use width::{check_path_decomposition, optimal_path_decomposition, pathwidth, treewidth, WIDTH_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0} in an undirected graph")]
    Loop(usize),
    #[error("mode mismatch: {0}")]
    Mode(String),
    #[error("colours: {0}")]
    Colours(String),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph on {n} vertices exceeds the bound {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("graph JSON: {0}")]
    Json(String),
}
