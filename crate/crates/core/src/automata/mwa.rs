use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::ratlinalg::{QMatrix, Rational, SparseMatrix, SparseVec};

use super::AutomataError;

/// Multiplicity word automaton (S, Σ, M, α, η) over the rationals. The word a_1 … a_t is
/// mapped to α·M(a_1)···M(a_t)·η. Transitions are stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mwa {
    states: usize,
    alphabet: Vec<String>,
    transitions: Vec<SparseMatrix>,
    initial: SparseVec,
    final_vec: SparseVec,
}

pub(crate) fn check_alphabet(alphabet: &[String]) -> Result<(), AutomataError> {
    let mut seen = HashSet::new();
    for a in alphabet {
        if !seen.insert(a) {
            return Err(AutomataError::Alphabet(format!("letter {a:?} listed twice")));
        }
    }
    Ok(())
}

impl Mwa {
    pub fn new(
        states: usize,
        alphabet: Vec<String>,
        transitions: Vec<SparseMatrix>,
        initial: SparseVec,
        final_vec: SparseVec,
    ) -> Result<Self, AutomataError> {
        check_alphabet(&alphabet)?;
        if transitions.len() != alphabet.len() {
            return Err(AutomataError::Shape(format!(
                "{} transition matrices for {} letters",
                transitions.len(),
                alphabet.len()
            )));
        }
        for (a, m) in alphabet.iter().zip(&transitions) {
            if m.rows() != states || m.cols() != states {
                return Err(AutomataError::Shape(format!(
                    "M({a}) is {}x{}, expected {states}x{states}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if initial.dim() != states || final_vec.dim() != states {
            return Err(AutomataError::Shape("initial/final vectors do not match the state count".into()));
        }
        Ok(Mwa {
            states,
            alphabet,
            transitions,
            initial,
            final_vec,
        })
    }

    /// Builds from dense matrices, which is convenient for fixtures.
    pub fn from_dense(
        alphabet: &[&str],
        transitions: &[QMatrix],
        initial: &[Rational],
        final_vec: &[Rational],
    ) -> Result<Self, AutomataError> {
        Mwa::new(
            initial.len(),
            alphabet.iter().map(|s| s.to_string()).collect(),
            transitions.iter().map(SparseMatrix::from_dense).collect(),
            SparseVec::from_dense(initial),
            SparseVec::from_dense(final_vec),
        )
    }

    /// The automaton with no states, recognising the zero series.
    pub fn zero(alphabet: Vec<String>) -> Result<Self, AutomataError> {
        let t = vec![SparseMatrix::zeros(0, 0); alphabet.len()];
        Mwa::new(0, alphabet, t, SparseVec::zeros(0), SparseVec::zeros(0))
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn transition(&self, letter: usize) -> &SparseMatrix {
        &self.transitions[letter]
    }

    pub fn initial(&self) -> &SparseVec {
        &self.initial
    }

    pub fn final_vec(&self) -> &SparseVec {
        &self.final_vec
    }

    pub fn letter_index(&self, a: &str) -> Option<usize> {
        self.alphabet.iter().position(|x| x == a)
    }

    pub fn word_indices<S: AsRef<str>>(&self, w: &[S]) -> Result<Vec<usize>, AutomataError> {
        w.iter()
            .map(|a| {
                self.letter_index(a.as_ref())
                    .ok_or_else(|| AutomataError::UnknownSymbol(a.as_ref().to_string()))
            })
            .collect()
    }

    /// α·M(w).
    pub fn forward(&self, w: &[usize]) -> SparseVec {
        w.iter()
            .fold(self.initial.clone(), |v, &a| v.mul_mat(&self.transitions[a]))
    }

    pub fn eval_indices(&self, w: &[usize]) -> Rational {
        self.forward(w).dot(&self.final_vec)
    }

    pub fn eval<S: AsRef<str>>(&self, w: &[S]) -> Result<Rational, AutomataError> {
        Ok(self.eval_indices(&self.word_indices(w)?))
    }

    /// Transition matrices of `other` reordered to this automaton's alphabet.
    fn aligned<'a>(&self, other: &'a Mwa) -> Result<Vec<&'a SparseMatrix>, AutomataError> {
        if self.alphabet.len() != other.alphabet.len() {
            return Err(AutomataError::Alphabet("alphabets differ".into()));
        }
        self.alphabet
            .iter()
            .map(|a| {
                other
                    .letter_index(a)
                    .map(|i| &other.transitions[i])
                    .ok_or_else(|| AutomataError::Alphabet(format!("letter {a:?} missing")))
            })
            .collect()
    }

    /// Direct sum: recognises the pointwise sum.
    pub fn sum(&self, other: &Mwa) -> Result<Mwa, AutomataError> {
        self.combine_sum(other, false)
    }

    /// Recognises the pointwise difference; the sum with a negated final vector.
    pub fn minus(&self, other: &Mwa) -> Result<Mwa, AutomataError> {
        self.combine_sum(other, true)
    }

    fn combine_sum(&self, other: &Mwa, negate: bool) -> Result<Mwa, AutomataError> {
        let theirs = self.aligned(other)?;
        let transitions = self
            .transitions
            .iter()
            .zip(theirs)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        let eta = if negate { other.final_vec.neg() } else { other.final_vec.clone() };
        Mwa::new(
            self.states + other.states,
            self.alphabet.clone(),
            transitions,
            self.initial.concat(&other.initial),
            self.final_vec.concat(&eta),
        )
    }

    /// Kronecker product: recognises the pointwise product. State (s, t) is s·|T| + t.
    pub fn kron(&self, other: &Mwa) -> Result<Mwa, AutomataError> {
        let theirs = self.aligned(other)?;
        let transitions = self
            .transitions
            .iter()
            .zip(theirs)
            .map(|(a, b)| a.kron(b))
            .collect();
        Mwa::new(
            self.states * other.states,
            self.alphabet.clone(),
            transitions,
            self.initial.kron(&other.initial),
            self.final_vec.kron(&other.final_vec),
        )
    }

    pub fn to_json(&self) -> MwaJson {
        MwaJson {
            states: self.states,
            alphabet: self.alphabet.clone(),
            transitions: self
                .alphabet
                .iter()
                .zip(&self.transitions)
                .map(|(a, m)| (a.clone(), m.to_dense().to_rows()))
                .collect(),
            initial: self.initial.to_dense(),
            final_vec: self.final_vec.to_dense(),
        }
    }

    pub fn from_json(j: &MwaJson) -> Result<Mwa, AutomataError> {
        let mut transitions = Vec::with_capacity(j.alphabet.len());
        for a in &j.alphabet {
            let rows = j
                .transitions
                .get(a)
                .ok_or_else(|| AutomataError::Json(format!("no transition for letter {a:?}")))?;
            transitions.push(SparseMatrix::from_dense(&dense(rows, j.states, j.states)?));
        }
        if j.transitions.len() != j.alphabet.len() {
            return Err(AutomataError::Json("transition for a letter outside the alphabet".into()));
        }
        if j.initial.len() != j.states || j.final_vec.len() != j.states {
            return Err(AutomataError::Json("initial/final length differs from states".into()));
        }
        Mwa::new(
            j.states,
            j.alphabet.clone(),
            transitions,
            SparseVec::from_dense(&j.initial),
            SparseVec::from_dense(&j.final_vec),
        )
    }
}

pub(crate) fn dense(rows: &[Vec<Rational>], r: usize, c: usize) -> Result<QMatrix, AutomataError> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(AutomataError::Json(format!("expected a {r}x{c} matrix")));
    }
    QMatrix::from_rows(rows.to_vec()).map_err(|e| AutomataError::Json(e.to_string()))
}

/// Wire format: rationals are "p/q" strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MwaJson {
    pub states: usize,
    pub alphabet: Vec<String>,
    pub transitions: BTreeMap<String, Vec<Vec<Rational>>>,
    pub initial: Vec<Rational>,
    #[serde(rename = "final")]
    pub final_vec: Vec<Rational>,
}
