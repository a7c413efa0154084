//! Gadget constructions: circuits to coloured digraphs and the F_h family, decolouring,
//! the non-negative lift of characteristic-polynomial equality, companion matrices for
//! VCP, bit gadgets for weighted digraphs, and the CFI-based reductions between cycles
//! and cycles-and-paths.

mod cfi_reductions;
mod circuit;
mod circuit_graph;
mod decolour;
mod matrices;

pub use cfi_reductions::{and_combine, cycles_to_cyclespaths, cyclespaths_to_cycles};
pub use circuit::{
    circuit_for_value, enumerate_normalised, eval_circuit, normalise_circuit, normalise_circuit_to_height, Circuit, CircuitJson, Gate, GateJson, GateLabel,
    NormalisedCircuit,
};
pub use circuit_graph::{
    alpha, build_f_h, build_f_hat, circuit_to_graph, circuit_to_graph_unchecked, CircuitGraphs, FShape,
    CIRCUIT_COLOURS, COLOUR_S, COLOUR_T,
};
pub use decolour::{
    comparable_pair, decolour, default_gadget_family, Decoloured, DirectionGadget, GadgetParams, GadgetParamsJson,
    IndicatorGadget, Pendant, UNCOLOURED,
};
pub use matrices::{bit_gadget_period, posdet_lift, vcp_to_pair, weighted_to_simple};

use crate::graphcore::GraphError;
use crate::ratlinalg::LinalgError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("malformed circuit: {0}")]
    Circuit(String),
    #[error("subtraction gates are not supported")]
    Subtraction,
    #[error("circuit is not normalised: {0}")]
    NotNormalised(String),
    #[error("gadget parameters: {0}")]
    Gadget(String),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("mode mismatch: {0}")]
    Mode(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
