use num_bigint::BigUint;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::automata::Term;
use crate::equivalence::{mta_equiv, mwa_equiv, Witness};
use crate::graphcore::{hom_count, Graph};
use crate::labelled::{pw_decode, soe, tw_decode, Letter};
use crate::ratlinalg::Rational;

use super::class::{ClassAutomaton, ClassKind};
use super::graph_automata::{build_graph_mta, build_graph_mwa};
use super::HomIndError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    SmallMember(usize),
    Word(Vec<Letter>),
    Term(Term),
    /// A named family member found by a trace or walk count, e.g. "C3" or "P4".
    Family(String),
}

impl std::fmt::Display for WitnessSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WitnessSource::SmallMember(i) => write!(f, "small_members[{i}]"),
            WitnessSource::Word(w) if w.is_empty() => write!(f, "word ε"),
            WitnessSource::Word(w) => write!(f, "word {}", crate::labelled::format_word(w)),
            WitnessSource::Term(t) => write!(f, "term {t}"),
            WitnessSource::Family(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomIndWitness {
    pub graph: Graph,
    pub hom_g: BigUint,
    pub hom_h: BigUint,
    pub source: WitnessSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomIndVerdict {
    pub indistinguishable: bool,
    pub witness: Option<HomIndWitness>,
}

impl HomIndVerdict {
    pub fn indistinguishable() -> Self {
        HomIndVerdict { indistinguishable: true, witness: None }
    }

    pub fn distinguished(graph: Graph, hom_g: BigUint, hom_h: BigUint, source: WitnessSource) -> Self {
        HomIndVerdict {
            indistinguishable: false,
            witness: Some(HomIndWitness { graph, hom_g, hom_h, source }),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("verdict serialises")
    }
}

impl Serialize for HomIndVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("indistinguishable", &self.indistinguishable)?;
        let w = self.witness.as_ref();
        m.serialize_entry("witness", &w.map(|w| &w.graph))?;
        m.serialize_entry("hom_counts", &w.map(|w| [w.hom_g.to_string(), w.hom_h.to_string()]))?;
        m.serialize_entry("witness_source", &w.map(|w| w.source.to_string()))?;
        m.end()
    }
}

fn check_modes(spec: &ClassAutomaton, g: &Graph, h: &Graph) -> Result<(), HomIndError> {
    for (name, x) in [("G", g), ("H", h)] {
        if x.is_directed() != spec.directed {
            return Err(HomIndError::Mode(format!(
                "{name} is {} but the class is {}",
                if x.is_directed() { "directed" } else { "undirected" },
                if spec.directed { "directed" } else { "undirected" }
            )));
        }
        if x.n() == 0 {
            return Err(HomIndError::Mode(format!("{name} has no vertices")));
        }
    }
    if g.is_coloured() || h.is_coloured() {
        return Err(HomIndError::Mode("class automata range over uncoloured graphs".into()));
    }
    Ok(())
}

fn to_biguint(r: &Rational) -> Result<BigUint, HomIndError> {
    r.numer()
        .to_biguint()
        .filter(|_| r.is_integer())
        .ok_or_else(|| HomIndError::Internal(format!("automaton value {r} is not a count")))
}

/// Homomorphism indistinguishability of G and H over the class described by `spec`.
///
/// Small members are compared by brute force first. Then the products A_F ⊗ A_G and
/// A_F ⊗ A_H are tested for equivalence; a separating word or term is decoded, its class
/// membership is asserted against the automaton and both counts are recomputed by the
/// homomorphism oracle before the witness is returned.
pub fn decide_homind(spec: &ClassAutomaton, g: &Graph, h: &Graph) -> Result<HomIndVerdict, HomIndError> {
    spec.validate()?;
    check_modes(spec, g, h)?;
    for (i, f) in spec.small_members.iter().enumerate() {
        let (a, b) = (hom_count(f, g)?, hom_count(f, h)?);
        if a != b {
            return Ok(HomIndVerdict::distinguished(f.clone(), a, b, WitnessSource::SmallMember(i)));
        }
    }
    let k = spec.k;
    let (decoded, source, values) = match spec.kind {
        ClassKind::Word => {
            let class = spec.to_mwa()?;
            let pg = class.kron(&build_graph_mwa(g, k)?)?;
            let ph = class.kron(&build_graph_mwa(h, k)?)?;
            let v = mwa_equiv(&pg, &ph)?;
            let (Some(Witness::Word(w)), Some(values)) = (v.witness, v.values) else {
                return Ok(HomIndVerdict::indistinguishable());
            };
            let word = w.iter().map(|s| s.parse()).collect::<Result<Vec<Letter>, _>>()?;
            if !spec.accepts_word(&word)? {
                return Err(HomIndError::Internal(format!("witness word {w:?} is outside the class")));
            }
            (soe(&pw_decode(&word, k, spec.directed)?), WitnessSource::Word(word), values)
        }
        ClassKind::Tree => {
            let class = spec.to_mta()?;
            let pg = class.kron(&build_graph_mta(g, k)?)?;
            let ph = class.kron(&build_graph_mta(h, k)?)?;
            let v = mta_equiv(&pg, &ph)?;
            let (Some(Witness::Term(t)), Some(values)) = (v.witness, v.values) else {
                return Ok(HomIndVerdict::indistinguishable());
            };
            if !spec.accepts_term(&t)? {
                return Err(HomIndError::Internal(format!("witness term {t} is outside the class")));
            }
            (soe(&tw_decode(&t, k, spec.directed)?), WitnessSource::Term(t), values)
        }
    };
    let (a, b) = (hom_count(&decoded, g)?, hom_count(&decoded, h)?);
    if a == b || a != to_biguint(&values.0)? || b != to_biguint(&values.1)? {
        return Err(HomIndError::Internal(format!(
            "witness re-verification failed: automaton {} vs {}, oracle {a} vs {b}",
            values.0, values.1
        )));
    }
    Ok(HomIndVerdict::distinguished(decoded, a, b, source))
}
