use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automata::{Mta, Mwa, Term};
use crate::graphcore::Graph;
use crate::labelled::{letters, Letter, GLUE_SYMBOL, LEAF_SYMBOL};
use crate::ratlinalg::{Rational, SparseMatrix, SparseVec};

use super::HomIndError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Word,
    Tree,
}

/// Deterministic 0/1 automaton over the generator alphabet describing a graph class.
///
/// Word automata read the word left to right; the state after a prefix a_1 … a_i is the
/// class of D^{a_i}···D^{a_1}·1. Every generator is its own transpose, so the decoded graph
/// of a word and of its reversal coincide after dropping labels, and acceptance is a
/// property of the word's decoded graph. Tree automata run bottom-up: leaves start in
/// `initial`, unary letters use `step` and `glue` uses `glue_step`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassAutomaton {
    pub kind: ClassKind,
    pub k: usize,
    pub directed: bool,
    pub states: Vec<String>,
    pub initial: usize,
    /// `step[s][l]` for the l-th letter of `letters(k, directed)`.
    pub step: Vec<Vec<usize>>,
    pub glue_step: Option<Vec<Vec<usize>>>,
    pub accepting: Vec<bool>,
    /// Every class member with fewer than k vertices (members with exactly k vertices may
    /// be listed too; the automaton covers them as well).
    pub small_members: Vec<Graph>,
}

impl ClassAutomaton {
    pub fn alphabet(&self) -> Vec<Letter> {
        letters(self.k, self.directed)
    }

    pub fn validate(&self) -> Result<(), HomIndError> {
        let bad = |m: String| Err(HomIndError::Spec(m));
        let s = self.states.len();
        let l = self.alphabet().len();
        if self.k == 0 {
            return bad("k must be at least 1".into());
        }
        if self.initial >= s {
            return bad("initial state out of range".into());
        }
        if self.accepting.len() != s || self.step.len() != s {
            return bad("step/accepting tables do not match the states".into());
        }
        if self.step.iter().any(|row| row.len() != l || row.iter().any(|&t| t >= s)) {
            return bad("step is not total on the generator alphabet".into());
        }
        match (&self.kind, &self.glue_step) {
            (ClassKind::Tree, None) => return bad("tree automaton without glue_step".into()),
            (ClassKind::Word, Some(_)) => return bad("word automaton with glue_step".into()),
            (ClassKind::Tree, Some(g)) => {
                if g.len() != s || g.iter().any(|row| row.len() != s || row.iter().any(|&t| t >= s)) {
                    return bad("glue_step is not total".into());
                }
            }
            _ => {}
        }
        for m in &self.small_members {
            if m.is_directed() != self.directed {
                return bad("small member with the wrong directedness".into());
            }
        }
        Ok(())
    }

    /// Whether glue_step is symmetric; checked rather than assumed.
    pub fn glue_is_symmetric(&self) -> bool {
        self.glue_step.as_ref().is_none_or(|g| {
            (0..g.len()).all(|a| (0..g.len()).all(|b| g[a][b] == g[b][a]))
        })
    }

    fn letter_index(&self, l: Letter) -> Result<usize, HomIndError> {
        self.alphabet()
            .iter()
            .position(|&x| x == l)
            .ok_or_else(|| HomIndError::Spec(format!("{l} is not in the alphabet")))
    }

    pub fn run_word(&self, w: &[Letter]) -> Result<usize, HomIndError> {
        let mut s = self.initial;
        for &l in w {
            s = self.step[s][self.letter_index(l)?];
        }
        Ok(s)
    }

    pub fn run_term(&self, t: &Term) -> Result<usize, HomIndError> {
        match (t.symbol.as_str(), t.children.as_slice()) {
            (LEAF_SYMBOL, []) => Ok(self.initial),
            (GLUE_SYMBOL, [a, b]) => {
                let g = self
                    .glue_step
                    .as_ref()
                    .ok_or_else(|| HomIndError::Spec("word automaton cannot glue".into()))?;
                Ok(g[self.run_term(a)?][self.run_term(b)?])
            }
            (sym, [c]) => {
                let l: Letter = sym.parse()?;
                Ok(self.step[self.run_term(c)?][self.letter_index(l)?])
            }
            (sym, _) => Err(HomIndError::Spec(format!("bad term node {sym}"))),
        }
    }

    pub fn accepts_word(&self, w: &[Letter]) -> Result<bool, HomIndError> {
        Ok(self.accepting[self.run_word(w)?])
    }

    pub fn accepts_term(&self, t: &Term) -> Result<bool, HomIndError> {
        Ok(self.accepting[self.run_term(t)?])
    }

    /// States reachable from the initial state that can still reach acceptance.
    fn useful_states(&self) -> Vec<bool> {
        let s = self.states.len();
        let mut reach = vec![false; s];
        reach[self.initial] = true;
        let mut changed = true;
        while changed {
            changed = false;
            let mut mark = |t: usize, reach: &mut Vec<bool>| {
                if !reach[t] {
                    reach[t] = true;
                    changed = true;
                }
            };
            for a in 0..s {
                if !reach[a] {
                    continue;
                }
                for &t in &self.step[a] {
                    mark(t, &mut reach);
                }
                if let Some(g) = &self.glue_step {
                    for b in 0..s {
                        if reach[b] {
                            mark(g[a][b], &mut reach);
                            mark(g[b][a], &mut reach);
                        }
                    }
                }
            }
        }
        let mut co = self.accepting.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..s {
                if co[a] {
                    continue;
                }
                let via_step = self.step[a].iter().any(|&t| co[t]);
                let via_glue = self.glue_step.as_ref().is_some_and(|g| {
                    (0..s).any(|b| reach[b] && (co[g[a][b]] || co[g[b][a]]))
                });
                if via_step || via_glue {
                    co[a] = true;
                    changed = true;
                }
            }
        }
        (0..s).map(|a| reach[a] && co[a]).collect()
    }

    fn kept_index(&self) -> (Vec<Option<usize>>, usize) {
        let useful = self.useful_states();
        let mut idx = vec![None; useful.len()];
        let mut next = 0;
        for (a, &u) in useful.iter().enumerate() {
            if u {
                idx[a] = Some(next);
                next += 1;
            }
        }
        (idx, next)
    }

    /// The 0/1 word automaton, trimmed to useful states (the series is unchanged).
    pub fn to_mwa(&self) -> Result<Mwa, HomIndError> {
        if self.kind != ClassKind::Word {
            return Err(HomIndError::Spec("expected a word automaton".into()));
        }
        self.validate()?;
        let (idx, n) = self.kept_index();
        let alphabet: Vec<String> = self.alphabet().iter().map(Letter::to_string).collect();
        let mut transitions = vec![SparseMatrix::zeros(n, n); alphabet.len()];
        for (a, row) in self.step.iter().enumerate() {
            let Some(i) = idx[a] else { continue };
            for (l, &t) in row.iter().enumerate() {
                if let Some(j) = idx[t] {
                    transitions[l].add_entry(i, j, Rational::one());
                }
            }
        }
        let initial = idx[self.initial].map_or(SparseVec::zeros(n), |i| SparseVec::unit(n, i));
        let fin = SparseVec::from_entries(
            n,
            (0..self.states.len())
                .filter(|&a| self.accepting[a])
                .filter_map(|a| idx[a].map(|i| (i, Rational::one()))),
        );
        Ok(Mwa::new(n, alphabet, transitions, initial, fin)?)
    }

    /// The 0/1 tree automaton over `1`/0, letters/1 and `glue`/2, trimmed to useful states.
    pub fn to_mta(&self) -> Result<Mta, HomIndError> {
        if self.kind != ClassKind::Tree {
            return Err(HomIndError::Spec("expected a tree automaton".into()));
        }
        self.validate()?;
        let (idx, n) = self.kept_index();
        let mut symbols = vec![(LEAF_SYMBOL.to_string(), 0)];
        let mut transitions = Vec::new();
        let mut leaf = SparseMatrix::zeros(1, n);
        if let Some(i) = idx[self.initial] {
            leaf.add_entry(0, i, Rational::one());
        }
        transitions.push(leaf);
        for (l, letter) in self.alphabet().iter().enumerate() {
            symbols.push((letter.to_string(), 1));
            let mut m = SparseMatrix::zeros(n, n);
            for (a, row) in self.step.iter().enumerate() {
                if let (Some(i), Some(j)) = (idx[a], idx[row[l]]) {
                    m.add_entry(i, j, Rational::one());
                }
            }
            transitions.push(m);
        }
        symbols.push((GLUE_SYMBOL.to_string(), 2));
        let g = self.glue_step.as_ref().expect("validated");
        let mut m = SparseMatrix::zeros(n * n, n);
        for a in 0..self.states.len() {
            for b in 0..self.states.len() {
                if let (Some(i), Some(j), Some(t)) = (idx[a], idx[b], idx[g[a][b]]) {
                    m.add_entry(i * n + j, t, Rational::one());
                }
            }
        }
        transitions.push(m);
        let fin = SparseVec::from_entries(
            n,
            (0..self.states.len())
                .filter(|&a| self.accepting[a])
                .filter_map(|a| idx[a].map(|i| (i, Rational::one()))),
        );
        Ok(Mta::new(n, symbols, transitions, fin)?)
    }

    pub fn to_json(&self) -> ClassAutomatonJson {
        let alphabet = self.alphabet();
        let name = |s: usize| self.states[s].clone();
        ClassAutomatonJson {
            kind: self.kind,
            k: self.k,
            directed: Some(self.directed),
            states: self.states.clone(),
            initial: name(self.initial),
            accepting: (0..self.states.len()).filter(|&s| self.accepting[s]).map(name).collect(),
            step: (0..self.states.len())
                .map(|s| {
                    let row = alphabet
                        .iter()
                        .zip(&self.step[s])
                        .map(|(l, &t)| (l.to_string(), name(t)))
                        .collect();
                    (name(s), row)
                })
                .collect(),
            glue_step: self.glue_step.as_ref().map(|g| {
                (0..self.states.len())
                    .map(|a| {
                        let row = (0..self.states.len()).map(|b| (name(b), name(g[a][b]))).collect();
                        (name(a), row)
                    })
                    .collect()
            }),
            small_members: self.small_members.clone(),
        }
    }

    pub fn from_json(j: &ClassAutomatonJson) -> Result<ClassAutomaton, HomIndError> {
        let pos: BTreeMap<&str, usize> = j.states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if pos.len() != j.states.len() {
            return Err(HomIndError::Spec("duplicate state names".into()));
        }
        let find = |s: &str| {
            pos.get(s)
                .copied()
                .ok_or_else(|| HomIndError::Spec(format!("unknown state {s:?}")))
        };
        let directed = j.directed.unwrap_or(false);
        let alphabet = letters(j.k, directed);
        let mut step = Vec::with_capacity(j.states.len());
        for s in &j.states {
            let row = j
                .step
                .get(s)
                .ok_or_else(|| HomIndError::Spec(format!("no step row for state {s:?}")))?;
            let targets = alphabet
                .iter()
                .map(|l| {
                    let t = row
                        .get(&l.to_string())
                        .ok_or_else(|| HomIndError::Spec(format!("no step for ({s}, {l})")))?;
                    find(t)
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != alphabet.len() {
                return Err(HomIndError::Spec(format!("step row of {s:?} has letters outside B(k)")));
            }
            step.push(targets);
        }
        let glue_step = match &j.glue_step {
            None => None,
            Some(g) => {
                let mut table = Vec::with_capacity(j.states.len());
                for a in &j.states {
                    let row = g
                        .get(a)
                        .ok_or_else(|| HomIndError::Spec(format!("no glue row for {a:?}")))?;
                    table.push(
                        j.states
                            .iter()
                            .map(|b| {
                                let t = row
                                    .get(b)
                                    .ok_or_else(|| HomIndError::Spec(format!("no glue entry ({a}, {b})")))?;
                                find(t)
                            })
                            .collect::<Result<Vec<_>, _>>()?,
                    );
                }
                Some(table)
            }
        };
        let mut accepting = vec![false; j.states.len()];
        for s in &j.accepting {
            accepting[find(s)?] = true;
        }
        let c = ClassAutomaton {
            kind: j.kind,
            k: j.k,
            directed,
            states: j.states.clone(),
            initial: find(&j.initial)?,
            step,
            glue_step,
            accepting,
            small_members: j.small_members.clone(),
        };
        c.validate()?;
        Ok(c)
    }
}

/// Wire format. States are named by strings; `directed` defaults to false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassAutomatonJson {
    pub kind: ClassKind,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directed: Option<bool>,
    pub states: Vec<String>,
    pub initial: String,
    pub accepting: Vec<String>,
    pub step: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub glue_step: Option<BTreeMap<String, BTreeMap<String, String>>>,
    #[serde(default)]
    pub small_members: Vec<Graph>,
}

/// Single-state automaton accepting everything.
pub fn accept_all(kind: ClassKind, k: usize, directed: bool, small_members: Vec<Graph>) -> ClassAutomaton {
    let l = letters(k, directed).len();
    ClassAutomaton {
        kind,
        k,
        directed,
        states: vec!["all".into()],
        initial: 0,
        step: vec![vec![0; l]],
        glue_step: (kind == ClassKind::Tree).then(|| vec![vec![0]]),
        accepting: vec![true],
        small_members,
    }
}

/// Single-state automaton rejecting everything.
pub fn reject_all(kind: ClassKind, k: usize, directed: bool) -> ClassAutomaton {
    let mut c = accept_all(kind, k, directed, Vec::new());
    c.states = vec!["none".into()];
    c.accepting = vec![false];
    c
}
