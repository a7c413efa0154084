use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::automata::{Mta, Mwa, Term};
use crate::ratlinalg::{EchelonBasis, Rational, SparseVec};

use super::{mwa_is_zero_rank, EquivError, EquivVerdict, Method, Witness};

/// Forward vector α·M(w) with its generating word (letter indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordBasisVector {
    pub word: Vec<usize>,
    pub vector: SparseVec,
}

/// Reachable vector μ(t) with its generating term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermBasisVector {
    pub term: Term,
    pub vector: SparseVec,
}

/// Basis of span{α·M(w)}, found by breadth-first closure from α in alphabet order.
pub fn mwa_forward_basis(a: &Mwa) -> Vec<WordBasisVector> {
    forward_closure(a, |_| false)
}

/// Runs the closure, stopping early once `stop` accepts a newly added vector.
fn forward_closure(a: &Mwa, mut stop: impl FnMut(&WordBasisVector) -> bool) -> Vec<WordBasisVector> {
    let mut echelon = EchelonBasis::new();
    let mut basis: Vec<WordBasisVector> = Vec::new();
    let mut queue = VecDeque::new();
    let mut offer = |bv: WordBasisVector, echelon: &mut EchelonBasis, basis: &mut Vec<WordBasisVector>| -> Option<bool> {
        if !echelon.insert(&bv.vector) {
            return None;
        }
        let halt = stop(&bv);
        basis.push(bv);
        Some(halt)
    };
    let seed = WordBasisVector {
        word: Vec::new(),
        vector: a.initial().clone(),
    };
    match offer(seed, &mut echelon, &mut basis) {
        Some(true) => return basis,
        Some(false) => queue.push_back(0),
        None => {}
    }
    while let Some(i) = queue.pop_front() {
        for l in 0..a.alphabet().len() {
            let v = basis[i].vector.mul_mat(a.transition(l));
            let mut word = basis[i].word.clone();
            word.push(l);
            match offer(WordBasisVector { word, vector: v }, &mut echelon, &mut basis) {
                Some(true) => return basis,
                Some(false) => queue.push_back(basis.len() - 1),
                None => {}
            }
        }
    }
    basis
}

fn word_strings(a: &Mwa, w: &[usize]) -> Vec<String> {
    w.iter().map(|&l| a.alphabet()[l].clone()).collect()
}

/// Zero test by forward basis; the witness is a shortest word with a nonzero value.
pub fn mwa_is_zero_basis(a: &Mwa) -> EquivVerdict {
    let eta = a.final_vec();
    let basis = forward_closure(a, |bv| !bv.vector.dot(eta).is_zero());
    match basis.last() {
        Some(bv) if !bv.vector.dot(eta).is_zero() => EquivVerdict::differ(
            Method::Basis,
            Witness::Word(word_strings(a, &bv.word)),
            (bv.vector.dot(eta), Rational::zero()),
        ),
        _ => EquivVerdict::equivalent(Method::Basis),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EquivOptions {
    /// Run the rank test as a cross-check when the two automata have at most this many
    /// states together.
    pub rank_check_bound: usize,
}

impl Default for EquivOptions {
    fn default() -> Self {
        EquivOptions { rank_check_bound: 4 }
    }
}

pub fn mwa_equiv(a: &Mwa, b: &Mwa) -> Result<EquivVerdict, EquivError> {
    mwa_equiv_with(a, b, EquivOptions::default())
}

/// Equivalence via the basis zero test on A ⊖ B. The witness values are re-evaluated on
/// A and B separately.
pub fn mwa_equiv_with(a: &Mwa, b: &Mwa, opts: EquivOptions) -> Result<EquivVerdict, EquivError> {
    let d = a.minus(b)?;
    let z = mwa_is_zero_basis(&d);
    if a.states() + b.states() <= opts.rank_check_bound && mwa_is_zero_rank(&d) != z.equivalent {
        return Err(EquivError::CrossCheck(format!(
            "basis says {}, rank disagrees",
            if z.equivalent { "equivalent" } else { "inequivalent" }
        )));
    }
    let Some(Witness::Word(w)) = z.witness else {
        return Ok(EquivVerdict::equivalent(Method::Basis));
    };
    let va = a.eval(&w)?;
    let vb = b.eval(&w)?;
    if va == vb {
        return Err(EquivError::CrossCheck(format!("witness {w:?} does not separate")));
    }
    Ok(EquivVerdict::differ(Method::Basis, Witness::Word(w), (va, vb)))
}

/// Basis of span{μ(t)} by multilinear closure in order of increasing term size.
pub fn mta_reach_basis(a: &Mta) -> Vec<TermBasisVector> {
    reach_closure(a, |_| false)
}

fn reach_closure(a: &Mta, mut stop: impl FnMut(&TermBasisVector) -> bool) -> Vec<TermBasisVector> {
    // heap entries: (size, sequence number, symbol, argument basis indices)
    type Cand = Reverse<(usize, usize, usize, Vec<usize>)>;
    let mut heap: BinaryHeap<Cand> = BinaryHeap::new();
    let mut seq = 0usize;
    for (s, (_, n)) in a.symbols().iter().enumerate() {
        if *n == 0 {
            heap.push(Reverse((1, seq, s, Vec::new())));
            seq += 1;
        }
    }
    let mut echelon = EchelonBasis::new();
    let mut basis: Vec<TermBasisVector> = Vec::new();
    while let Some(Reverse((_, _, s, args))) = heap.pop() {
        let vecs: Vec<&SparseVec> = args.iter().map(|&i| &basis[i].vector).collect();
        let v = a.apply(s, &vecs);
        if !echelon.insert(&v) {
            continue;
        }
        let term = Term::node(
            a.symbols()[s].0.clone(),
            args.iter().map(|&i| basis[i].term.clone()).collect(),
        );
        let bv = TermBasisVector { term, vector: v };
        let halt = stop(&bv);
        basis.push(bv);
        if halt {
            break;
        }
        let new = basis.len() - 1;
        // every tuple over basis[0..=new] that uses the new vector at least once
        for (sym, (_, n)) in a.symbols().iter().enumerate() {
            if *n == 0 {
                continue;
            }
            let total = (new + 1).pow(*n as u32);
            for code in 0..total {
                let mut c = code;
                let mut tuple = vec![0; *n];
                for slot in tuple.iter_mut().rev() {
                    *slot = c % (new + 1);
                    c /= new + 1;
                }
                if !tuple.contains(&new) {
                    continue;
                }
                let size = 1 + tuple.iter().map(|&i| basis[i].term.size()).sum::<usize>();
                heap.push(Reverse((size, seq, sym, tuple)));
                seq += 1;
            }
        }
    }
    basis
}

/// Zero test by multilinear closure; the witness is a smallest term with a nonzero value.
pub fn mta_is_zero(a: &Mta) -> EquivVerdict {
    let eta = a.final_vec();
    let basis = reach_closure(a, |bv| !bv.vector.dot(eta).is_zero());
    match basis.last() {
        Some(bv) if !bv.vector.dot(eta).is_zero() => EquivVerdict::differ(
            Method::Closure,
            Witness::Term(bv.term.clone()),
            (bv.vector.dot(eta), Rational::zero()),
        ),
        _ => EquivVerdict::equivalent(Method::Closure),
    }
}

pub fn mta_equiv(a: &Mta, b: &Mta) -> Result<EquivVerdict, EquivError> {
    let d = a.minus(b)?;
    let z = mta_is_zero(&d);
    let Some(Witness::Term(t)) = z.witness else {
        return Ok(EquivVerdict::equivalent(Method::Closure));
    };
    let va = a.eval(&t)?;
    let vb = b.eval(&t)?;
    if va == vb {
        return Err(EquivError::CrossCheck(format!("witness {t} does not separate")));
    }
    Ok(EquivVerdict::differ(Method::Closure, Witness::Term(t), (va, vb)))
}

/// Random well-ranked term with at most `max_size` nodes, or None without leaf symbols.
pub fn random_term(symbols: &[(String, usize)], max_size: usize, rng: &mut impl Rng) -> Option<Term> {
    let leaves: Vec<&String> = symbols.iter().filter(|(_, n)| *n == 0).map(|(s, _)| s).collect();
    if leaves.is_empty() {
        return None;
    }
    let target = rng.gen_range(1..=max_size.max(1));
    Some(build_random(symbols, &leaves, target, rng))
}

fn build_random(symbols: &[(String, usize)], leaves: &[&String], budget: usize, rng: &mut impl Rng) -> Term {
    let inner: Vec<&(String, usize)> = symbols.iter().filter(|(_, n)| *n >= 1 && n + 1 <= budget).collect();
    if inner.is_empty() {
        return Term::leaf(leaves[rng.gen_range(0..leaves.len())].clone());
    }
    let (sym, n) = inner[rng.gen_range(0..inner.len())];
    // split the remaining budget among the children, each getting at least one node
    let mut shares = vec![1usize; *n];
    for _ in 0..budget - 1 - n {
        shares[rng.gen_range(0..*n)] += 1;
    }
    let children = shares.into_iter().map(|b| build_random(symbols, leaves, b, rng)).collect();
    Term::node(sym.clone(), children)
}

/// One-sided randomised check: compares the two automata on `trials` random terms of size
/// at most the total state count. "Not equivalent" is always correct.
pub fn mta_equiv_randomised(a: &Mta, b: &Mta, trials: usize, seed: u64) -> Result<EquivVerdict, EquivError> {
    a.minus(b)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let max_size = (a.states() + b.states()).max(1);
    for _ in 0..trials {
        let Some(t) = random_term(a.symbols(), max_size, &mut rng) else {
            break;
        };
        let va = a.eval(&t)?;
        let vb = b.eval(&t)?;
        if va != vb {
            let mut v = EquivVerdict::differ(Method::Randomised, Witness::Term(t), (va, vb));
            v.trials = Some(trials);
            return Ok(v);
        }
    }
    let mut v = EquivVerdict::equivalent(Method::Randomised);
    v.trials = Some(trials);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::{QMatrix, SparseMatrix};

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    fn scalar(x: i64) -> Mwa {
        Mwa::from_dense(&["a"], &[QMatrix::from_i64(&[&[x]])], &[q(1)], &[q(1)]).unwrap()
    }

    #[test]
    fn forward_basis_examples() {
        let zero_alpha = Mwa::from_dense(&["a"], &[QMatrix::from_i64(&[&[2]])], &[q(0)], &[q(1)]).unwrap();
        assert!(mwa_forward_basis(&zero_alpha).is_empty());
        let b = mwa_forward_basis(&scalar(2));
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].vector.to_dense(), vec![q(1)]);
        // nilpotent shift on 4 states starting at e_1: e_1, e_2, e_3, e_4
        let mut shift = QMatrix::zeros(4, 4);
        for i in 0..3 {
            shift[(i, i + 1)] = q(1);
        }
        let a = Mwa::from_dense(&["a"], &[shift], &[q(1), q(0), q(0), q(0)], &vec![q(0); 4]).unwrap();
        assert_eq!(mwa_forward_basis(&a).len(), 4);
        let mut shift = QMatrix::zeros(4, 4);
        shift[(0, 1)] = q(1);
        let a = Mwa::from_dense(&["a"], &[shift], &[q(1), q(0), q(0), q(0)], &vec![q(0); 4]).unwrap();
        assert_eq!(mwa_forward_basis(&a).len(), 2);
    }

    #[test]
    fn zero_basis_examples() {
        assert!(mwa_is_zero_basis(&Mwa::zero(vec!["a".into()]).unwrap()).equivalent);
        let a = scalar(3);
        assert!(mwa_is_zero_basis(&a.minus(&a).unwrap()).equivalent);
        let neg = Mwa::from_dense(&["a"], &[QMatrix::from_i64(&[&[3]])], &[q(1)], &[q(-1)]).unwrap();
        let v = mwa_equiv(&a, &neg).unwrap();
        assert_eq!(v.witness, Some(Witness::Word(vec![])));
        assert_eq!(v.values, Some((q(1), q(-1))));
    }

    #[test]
    fn equiv_examples() {
        assert!(mwa_equiv(&scalar(2), &scalar(2)).unwrap().equivalent);
        let v = mwa_equiv(&scalar(2), &scalar(3)).unwrap();
        assert_eq!(v.witness, Some(Witness::Word(vec!["a".into()])));
        assert_eq!(v.values, Some((q(2), q(3))));
        assert_eq!(
            v.to_json_string(),
            r#"{"equivalent":false,"witness":"a","values":["2","3"],"method":"basis"}"#
        );
    }

    fn unary_shift() -> Mta {
        // leaf e_1, unary shift e_1 -> e_2 -> e_3
        let mut leaf = SparseMatrix::zeros(1, 3);
        leaf.add_entry(0, 0, q(1));
        let mut s = SparseMatrix::zeros(3, 3);
        s.add_entry(0, 1, q(1));
        s.add_entry(1, 2, q(1));
        Mta::new(3, vec![("c".into(), 0), ("s".into(), 1)], vec![leaf, s], SparseVec::unit(3, 2)).unwrap()
    }

    #[test]
    fn reach_basis_examples() {
        let zero_leaf = Mta::new(
            1,
            vec![("c".into(), 0)],
            vec![SparseMatrix::zeros(1, 1)],
            SparseVec::ones(1),
        )
        .unwrap();
        assert!(mta_reach_basis(&zero_leaf).is_empty());
        let a = unary_shift();
        let b = mta_reach_basis(&a);
        let terms: Vec<String> = b.iter().map(|bv| bv.term.to_string()).collect();
        assert_eq!(terms, ["c", "s(c)", "s(s(c))"]);
        let z = mta_is_zero(&a);
        assert_eq!(z.witness, Some(Witness::Term("s(s(c))".parse().unwrap())));
    }

    #[test]
    fn tree_equivalence_witness_is_smallest() {
        let a = unary_shift();
        let mut other = a.clone();
        assert!(mta_equiv(&a, &other).unwrap().equivalent);
        other = Mta::new(
            3,
            a.symbols().to_vec(),
            vec![a.transition(0).clone(), a.transition(1).clone()],
            SparseVec::unit(3, 1),
        )
        .unwrap();
        let v = mta_equiv(&a, &other).unwrap();
        assert_eq!(v.witness, Some(Witness::Term("s(c)".parse().unwrap())));
        assert_eq!(v.values, Some((q(0), q(1))));
    }

    #[test]
    fn random_terms_respect_ranks() {
        let syms = vec![("c".to_string(), 0), ("f".to_string(), 2), ("g".to_string(), 1)];
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let t = random_term(&syms, 6, &mut rng).unwrap();
            assert!(t.size() <= 6);
        }
        assert!(random_term(&[("g".to_string(), 1)], 3, &mut rng).is_none());
    }
}
