use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::ratlinalg::{QMatrix, Rational, SparseMatrix, SparseVec};

use super::mwa::{check_alphabet, dense};
use super::{AutomataError, Mwa, Term};

/// Multiplicity tree automaton (S, Ω, μ, η). A symbol of arity n has an s^n × s transition
/// matrix whose rows are indexed by state tuples (first child most significant), and
/// μ(σ(t1,…,tn)) = (μ(t1) ⊗ … ⊗ μ(tn))·μ(σ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mta {
    states: usize,
    symbols: Vec<(String, usize)>,
    transitions: Vec<SparseMatrix>,
    final_vec: SparseVec,
}

fn rows_for(states: usize, arity: usize) -> Result<usize, AutomataError> {
    states
        .checked_pow(arity as u32)
        .ok_or_else(|| AutomataError::Shape(format!("{states}^{arity} rows overflow")))
}

impl Mta {
    pub fn new(
        states: usize,
        symbols: Vec<(String, usize)>,
        transitions: Vec<SparseMatrix>,
        final_vec: SparseVec,
    ) -> Result<Self, AutomataError> {
        let names: Vec<String> = symbols.iter().map(|(s, _)| s.clone()).collect();
        check_alphabet(&names)?;
        if transitions.len() != symbols.len() {
            return Err(AutomataError::Shape("one transition matrix per symbol expected".into()));
        }
        for ((s, n), m) in symbols.iter().zip(&transitions) {
            let r = rows_for(states, *n)?;
            if m.rows() != r || m.cols() != states {
                return Err(AutomataError::Shape(format!(
                    "μ({s}) is {}x{}, expected {r}x{states}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if final_vec.dim() != states {
            return Err(AutomataError::Shape("final vector does not match the state count".into()));
        }
        Ok(Mta {
            states,
            symbols,
            transitions,
            final_vec,
        })
    }

    pub fn zero(symbols: Vec<(String, usize)>) -> Result<Self, AutomataError> {
        let t = symbols
            .iter()
            .map(|(_, n)| SparseMatrix::zeros(usize::from(*n == 0), 0))
            .collect();
        Mta::new(0, symbols, t, SparseVec::zeros(0))
    }

    /// The tree automaton of an MWA: the leaf symbol carries α and letters act as unary
    /// symbols, so the word a_1 … a_t corresponds to a_t(…a_1(leaf)…).
    pub fn from_mwa(a: &Mwa, leaf: &str) -> Result<Self, AutomataError> {
        let mut symbols = vec![(leaf.to_string(), 0)];
        let mut init = SparseMatrix::zeros(1, a.states());
        init.set_row(0, a.initial().clone())
            .map_err(|e| AutomataError::Shape(e.to_string()))?;
        let mut transitions = vec![init];
        for (i, l) in a.alphabet().iter().enumerate() {
            symbols.push((l.clone(), 1));
            transitions.push(a.transition(i).clone());
        }
        Mta::new(a.states(), symbols, transitions, a.final_vec().clone())
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn symbols(&self) -> &[(String, usize)] {
        &self.symbols
    }

    pub fn transition(&self, sym: usize) -> &SparseMatrix {
        &self.transitions[sym]
    }

    pub fn final_vec(&self) -> &SparseVec {
        &self.final_vec
    }

    pub fn symbol_index(&self, s: &str) -> Option<usize> {
        self.symbols.iter().position(|(x, _)| x == s)
    }

    /// (v1 ⊗ … ⊗ vn)·μ(σ), computed over the nonzero entries only.
    pub fn apply(&self, sym: usize, args: &[&SparseVec]) -> SparseVec {
        debug_assert_eq!(args.len(), self.symbols[sym].1);
        let m = &self.transitions[sym];
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        let mut stack: Vec<(usize, usize, Rational)> = vec![(0, 0, Rational::one())];
        while let Some((depth, row, coeff)) = stack.pop() {
            if depth == args.len() {
                for (j, y) in m.row(row) {
                    *acc.entry(*j).or_default() += &(&coeff * y);
                }
                continue;
            }
            for (i, x) in args[depth].entries() {
                stack.push((depth + 1, row * self.states + i, &coeff * x));
            }
        }
        SparseVec::from_entries(self.states, acc)
    }

    /// μ(t).
    pub fn state_vector(&self, t: &Term) -> Result<SparseVec, AutomataError> {
        let sym = self
            .symbol_index(&t.symbol)
            .ok_or_else(|| AutomataError::UnknownSymbol(t.symbol.clone()))?;
        let arity = self.symbols[sym].1;
        if t.children.len() != arity {
            return Err(AutomataError::Arity(format!(
                "{} expects {arity} arguments, got {}",
                t.symbol,
                t.children.len()
            )));
        }
        let kids = t
            .children
            .iter()
            .map(|c| self.state_vector(c))
            .collect::<Result<Vec<_>, _>>()?;
        let refs: Vec<&SparseVec> = kids.iter().collect();
        Ok(self.apply(sym, &refs))
    }

    pub fn eval(&self, t: &Term) -> Result<Rational, AutomataError> {
        Ok(self.state_vector(t)?.dot(&self.final_vec))
    }

    fn aligned<'a>(&self, other: &'a Mta) -> Result<Vec<&'a SparseMatrix>, AutomataError> {
        if self.symbols.len() != other.symbols.len() {
            return Err(AutomataError::Alphabet("ranked alphabets differ".into()));
        }
        self.symbols
            .iter()
            .map(|(s, n)| match other.symbol_index(s) {
                Some(i) if other.symbols[i].1 == *n => Ok(&other.transitions[i]),
                Some(_) => Err(AutomataError::Alphabet(format!("symbol {s:?} has different arities"))),
                None => Err(AutomataError::Alphabet(format!("symbol {s:?} missing"))),
            })
            .collect()
    }

    pub fn sum(&self, other: &Mta) -> Result<Mta, AutomataError> {
        self.combine_sum(other, false)
    }

    pub fn minus(&self, other: &Mta) -> Result<Mta, AutomataError> {
        self.combine_sum(other, true)
    }

    fn combine_sum(&self, other: &Mta, negate: bool) -> Result<Mta, AutomataError> {
        let theirs = self.aligned(other)?;
        let (sa, sb) = (self.states, other.states);
        let s = sa + sb;
        let mut transitions = Vec::with_capacity(self.symbols.len());
        for (((_, n), ma), mb) in self.symbols.iter().zip(&self.transitions).zip(theirs) {
            let mut m = SparseMatrix::zeros(rows_for(s, *n)?, s);
            // tuples entirely inside one block keep their row; mixed tuples map to zero
            for (r, row) in ma.nonzero_rows() {
                let tuple = split(r, sa, *n);
                let idx = tuple.iter().fold(0, |acc, &x| acc * s + x);
                for (j, x) in row {
                    m.add_entry(idx, *j, x.clone());
                }
            }
            for (r, row) in mb.nonzero_rows() {
                let tuple = split(r, sb, *n);
                let idx = tuple.iter().fold(0, |acc, &x| acc * s + x + sa);
                for (j, x) in row {
                    m.add_entry(idx, sa + j, x.clone());
                }
            }
            transitions.push(m);
        }
        let eta = if negate { other.final_vec.neg() } else { other.final_vec.clone() };
        Mta::new(s, self.symbols.clone(), transitions, self.final_vec.concat(&eta))
    }

    /// Kronecker product; state (s, t) is s·|T| + t and rows are reshuffled to
    /// ((s1,t1), …, (sn,tn)).
    pub fn kron(&self, other: &Mta) -> Result<Mta, AutomataError> {
        let theirs = self.aligned(other)?;
        let (sa, sb) = (self.states, other.states);
        let s = sa * sb;
        let mut transitions = Vec::with_capacity(self.symbols.len());
        for (((_, n), ma), mb) in self.symbols.iter().zip(&self.transitions).zip(theirs) {
            let mut m = SparseMatrix::zeros(rows_for(s, *n)?, s);
            for (ra, rowa) in ma.nonzero_rows() {
                let ta = split(ra, sa, *n);
                for (rb, rowb) in mb.nonzero_rows() {
                    let tb = split(rb, sb, *n);
                    let idx = ta
                        .iter()
                        .zip(&tb)
                        .fold(0, |acc, (&x, &y)| acc * s + x * sb + y);
                    let row = rowa.iter().flat_map(|(j, x)| {
                        rowb.iter().map(move |(l, y)| (j * sb + l, x * y))
                    });
                    m.set_row(idx, SparseVec::from_entries(s, row))
                        .map_err(|e| AutomataError::Shape(e.to_string()))?;
                }
            }
            transitions.push(m);
        }
        Mta::new(s, self.symbols.clone(), transitions, self.final_vec.kron(&other.final_vec))
    }

    pub fn to_json(&self) -> MtaJson {
        MtaJson {
            states: self.states,
            alphabet: self.symbols.iter().map(|(s, _)| s.clone()).collect(),
            arity: self.symbols.iter().cloned().collect(),
            transitions: self
                .symbols
                .iter()
                .zip(&self.transitions)
                .map(|((s, _), m)| (s.clone(), m.to_dense().to_rows()))
                .collect(),
            final_vec: self.final_vec.to_dense(),
        }
    }

    pub fn from_json(j: &MtaJson) -> Result<Mta, AutomataError> {
        let mut symbols = Vec::new();
        let mut transitions = Vec::new();
        for s in &j.alphabet {
            let n = *j
                .arity
                .get(s)
                .ok_or_else(|| AutomataError::Json(format!("no arity for symbol {s:?}")))?;
            let rows = j
                .transitions
                .get(s)
                .ok_or_else(|| AutomataError::Json(format!("no transition for symbol {s:?}")))?;
            let m: QMatrix = dense(rows, rows_for(j.states, n)?, j.states)?;
            symbols.push((s.clone(), n));
            transitions.push(SparseMatrix::from_dense(&m));
        }
        if j.final_vec.len() != j.states {
            return Err(AutomataError::Json("final length differs from states".into()));
        }
        Mta::new(j.states, symbols, transitions, SparseVec::from_dense(&j.final_vec))
    }
}

/// Decomposes a row index into its n-tuple of states, first component most significant.
fn split(mut r: usize, s: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = r % s;
        r /= s;
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MtaJson {
    pub states: usize,
    pub alphabet: Vec<String>,
    pub arity: BTreeMap<String, usize>,
    pub transitions: BTreeMap<String, Vec<Vec<Rational>>>,
    #[serde(rename = "final")]
    pub final_vec: Vec<Rational>,
}
