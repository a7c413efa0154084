//! Homomorphism indistinguishability over recognisable classes: class automata, the graph
//! automata A_G, their products, and witness extraction. Built-in classes cover directed
//! cycles, cycles, cycles and paths, and bounded pathwidth or treewidth.

mod builtin;
mod class;
mod decide;
mod fast;
mod graph_automata;

pub use builtin::{all_small_graphs, builtin_class, cycle_family_automaton, CycleFamily, BUILTIN_NAMES, MAX_WIDTH_K};
pub use class::{accept_all, reject_all, ClassAutomaton, ClassAutomatonJson, ClassKind};
pub use decide::{decide_homind, HomIndVerdict, HomIndWitness, WitnessSource};
pub use fast::{
    closed_walk_counts, decide_cycles_fast, decide_cycles_paths_fast, decide_directed_cycles_fast, walk_counts,
};
pub use graph_automata::{build_graph_mta, build_graph_mwa, letter_matrix};

use crate::automata::AutomataError;
use crate::equivalence::EquivError;
use crate::graphcore::GraphError;
use crate::labelled::LabelledError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomIndError {
    #[error("malformed class automaton: {0}")]
    Spec(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("mode mismatch: {0}")]
    Mode(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Labelled(#[from] LabelledError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Equiv(#[from] EquivError),
}
