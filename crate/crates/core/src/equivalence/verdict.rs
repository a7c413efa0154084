use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::automata::Term;
use crate::ratlinalg::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Basis,
    Rank,
    Closure,
    Randomised,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Basis => "basis",
            Method::Rank => "rank",
            Method::Closure => "closure",
            Method::Randomised => "randomised",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Word(Vec<String>),
    Term(Term),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Word(w) if w.is_empty() => write!(f, "ε"),
            Witness::Word(w) => write!(f, "{}", w.join(" ")),
            Witness::Term(t) => write!(f, "{t}"),
        }
    }
}

/// Outcome of an equivalence or zero test. A witness carries the values of the two sides
/// (for a zero test the second value is 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivVerdict {
    pub equivalent: bool,
    pub witness: Option<Witness>,
    pub values: Option<(Rational, Rational)>,
    pub method: Method,
    /// Number of random trials, for randomised verdicts.
    pub trials: Option<usize>,
}

impl EquivVerdict {
    pub fn equivalent(method: Method) -> Self {
        EquivVerdict {
            equivalent: true,
            witness: None,
            values: None,
            method,
            trials: None,
        }
    }

    pub fn differ(method: Method, witness: Witness, values: (Rational, Rational)) -> Self {
        EquivVerdict {
            equivalent: false,
            witness: Some(witness),
            values: Some(values),
            method,
            trials: None,
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("verdict serialises")
    }
}

impl Serialize for EquivVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("equivalent", &self.equivalent)?;
        m.serialize_entry("witness", &self.witness.as_ref().map(Witness::to_string))?;
        m.serialize_entry("values", &self.values.as_ref().map(|(a, b)| [a, b]))?;
        m.serialize_entry("method", self.method.as_str())?;
        if let Some(t) = self.trials {
            m.serialize_entry("trials", &t)?;
        }
        m.end()
    }
}
