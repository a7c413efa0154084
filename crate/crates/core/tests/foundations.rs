mod common;

use homind::automata::{Mta, Mwa, Term};
use homind::equivalence::*;
use homind::graphcore::*;
use homind::labelled::*;
use homind::ratlinalg::{companion, newton_charpoly_equal, QMatrix, QPoly, Rational};
use num_bigint::BigUint;
use rand::Rng;

fn q(x: i64) -> Rational {
    Rational::from(x)
}

fn m(rows: &[&[i64]]) -> QMatrix {
    QMatrix::from_i64(rows)
}

fn n(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn rank_examples() {
    assert_eq!(QMatrix::zeros(2, 2).rank(), 0);
    assert_eq!(QMatrix::identity(3).rank(), 3);
    assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
}

#[test]
fn characteristic_polynomials() {
    assert_eq!(QMatrix::identity(2).char_poly().unwrap(), QPoly::from_i64(&[1, -2, 1]));
    assert_eq!(m(&[&[0, 1], &[1, 0]]).char_poly().unwrap(), QPoly::from_i64(&[-1, 0, 1]));
    let q2 = QPoly::from_i64(&[2, -3, 1]);
    assert_eq!(companion(&q2).unwrap().char_poly().unwrap(), q2);
    assert_eq!(companion(&QPoly::from_i64(&[5, 1])).unwrap(), m(&[&[-5]]));
    let cube = companion(&QPoly::from_i64(&[0, 0, 0, 1])).unwrap();
    assert!(cube.pow(3).unwrap().is_zero());
    assert_eq!(cube.char_poly().unwrap(), QPoly::from_i64(&[0, 0, 0, 1]));
}

#[test]
fn newton_examples() {
    let a = m(&[&[1, -2], &[3, 0]]);
    assert!(newton_charpoly_equal(&a, &a).unwrap());
    assert!(newton_charpoly_equal(&m(&[&[1, 0], &[0, 2]]), &m(&[&[2, 0], &[0, 1]])).unwrap());
    // equal χ although the two are not similar
    assert!(newton_charpoly_equal(&m(&[&[1, 1], &[0, 1]]), &QMatrix::identity(2)).unwrap());
    assert!(!newton_charpoly_equal(&m(&[&[1, 0], &[0, 2]]), &QMatrix::identity(2)).unwrap());
}

#[test]
fn kronecker_and_direct_sum() {
    assert_eq!(QMatrix::identity(2).kron(&QMatrix::identity(3)), QMatrix::identity(6));
    assert_eq!(m(&[&[2]]).kron(&m(&[&[3]])), m(&[&[6]]));
    assert_eq!(m(&[&[1]]).direct_sum(&m(&[&[2]])), QMatrix::diag(&[q(1), q(2)]));
}

#[test]
fn hom_count_examples() {
    let c5 = make_cycle(5, false).unwrap();
    assert_eq!(hom_count(&Graph::new(1, false), &c5).unwrap(), n(5));
    assert_eq!(hom_count(&make_cycle(3, false).unwrap(), &make_complete(3)).unwrap(), n(6));
    let mut rng = common::rng(1);
    for _ in 0..10 {
        let g = common::random_digraph(&mut rng, 4, 0.4);
        let a = QMatrix::from_i64(&g.adjacency_i64().iter().map(Vec::as_slice).collect::<Vec<_>>());
        for k in 1..=4 {
            let tr = a.pow(k).unwrap().trace().unwrap();
            let tr = BigUint::try_from(tr.to_integer().unwrap()).unwrap();
            assert_eq!(hom_count(&make_cycle(k as usize, true).unwrap(), &g).unwrap(), tr);
        }
    }
}

#[test]
fn pinned_counts() {
    let k3 = make_complete(3);
    let edge = make_path(2).unwrap();
    assert_eq!(hom_count_pinned(&edge, &k3, &[(0, 0)]).unwrap(), n(2));
    assert_eq!(hom_count_pinned(&edge, &k3, &[(0, 0), (1, 1)]).unwrap(), n(1));
    assert_eq!(hom_count_pinned(&edge, &k3, &[(0, 0), (1, 0)]).unwrap(), n(0));
    assert_eq!(hom_count_pinned(&edge, &k3, &[]).unwrap(), hom_count(&edge, &k3).unwrap());
}

#[test]
fn graph_operations() {
    let k3 = make_complete(3);
    let c4 = make_cycle(4, false).unwrap();
    assert_eq!(disjoint_union(&k3, &c4).unwrap().n(), 7);
    let prod = categorical_product(&k3, &k3).unwrap();
    assert_eq!(hom_count(&c4, &prod).unwrap(), hom_count(&c4, &k3).unwrap().pow(2));
    assert_eq!(complement(&k3).unwrap().edge_count(), 0);
    assert!(is_isomorphic(&make_kneser(1, 3).unwrap(), &k3).unwrap());
    let petersen = make_kneser(2, 5).unwrap();
    assert_eq!((petersen.n(), petersen.edge_count()), (10, 15));
    let loop1 = make_cycle(1, true).unwrap();
    assert!(loop1.n() == 1 && loop1.has_edge(0, 0));
}

#[test]
fn isomorphism_examples() {
    let c6 = make_cycle(6, false).unwrap();
    let two_triangles = copies(&make_cycle(3, false).unwrap(), 2).unwrap();
    assert!(is_isomorphic(&c6, &c6).unwrap());
    assert!(!is_isomorphic(&c6, &two_triangles).unwrap());
    let star = make_star(4);
    assert!(is_isomorphic(&star, &common::shuffled(&mut common::rng(2), &star)).unwrap());
}

#[test]
fn generator_shapes() {
    let gens = generators(2, false).unwrap();
    assert_eq!((gens.one.graph().n(), gens.one.graph().edge_count()), (2, 0));
    let a12 = generator(Letter::Edge(0, 1), 2, false).unwrap();
    assert_eq!((a12.graph().n(), a12.graph().edge_count()), (2, 1));
    assert_eq!(a12.in_labels(), a12.out_labels());
    let j1 = generator(Letter::Forget(0), 2, false).unwrap();
    assert_eq!((j1.graph().n(), j1.graph().edge_count()), (3, 0));
}

fn labelled_edge() -> LabelledGraph {
    series(&generator(Letter::Edge(0, 1), 2, false).unwrap(), &LabelledGraph::one(2, false).unwrap()).unwrap()
}

#[test]
fn gluing_and_series() {
    let one = LabelledGraph::one(2, false).unwrap();
    let glued = glue(&one, &one).unwrap();
    assert_eq!((glued.graph().n(), glued.graph().edge_count()), (2, 0));
    let e = labelled_edge();
    assert_eq!(glue(&e, &e).unwrap().graph().edge_count(), 1);
    assert!(is_isomorphic(&soe(&e), &make_complete(2)).unwrap());
    let id = BilabelledGraph::identity(2, false).unwrap();
    let k3 = make_complete(3);
    assert_eq!(hom_tensor(&series(&id, &e).unwrap(), &k3).unwrap(), hom_tensor(&e, &k3).unwrap());
}

#[test]
fn tensor_identities_on_triangle() {
    let k3 = make_complete(3);
    let mut rng = common::rng(3);
    let letters = letters(2, false);
    for _ in 0..20 {
        let w1: Vec<Letter> = (0..rng.gen_range(0..4)).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
        let w2: Vec<Letter> = (0..rng.gen_range(0..4)).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
        let (f, h) = (pw_decode(&w1, 2, false).unwrap(), pw_decode(&w2, 2, false).unwrap());
        let glued = hom_tensor(&glue(&f, &h).unwrap(), &k3).unwrap();
        assert_eq!(glued, hom_tensor(&f, &k3).unwrap().schur(&hom_tensor(&h, &k3).unwrap()).unwrap());
        let j = generator(Letter::Forget(0), 2, false).unwrap();
        let lhs = hom_tensor(&series(&j, &f).unwrap(), &k3).unwrap();
        let rhs = hom_matrix(&j, &k3).unwrap().apply(&hom_tensor(&f, &k3).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // the sum of entries is the hom count of the unlabelled graph
        assert_eq!(hom_tensor(&f, &k3).unwrap().soe_value(), hom_count(&soe(&f), &k3).unwrap());
    }
}

#[test]
fn tensor_examples() {
    let k3 = make_complete(3);
    let c4 = make_cycle(4, false).unwrap();
    let one = hom_tensor(&LabelledGraph::one(2, false).unwrap(), &k3).unwrap();
    assert!(one.entries.iter().all(|x| *x == n(1)));
    assert_eq!(one.soe_value(), n(9));
    assert_eq!(hom_tensor(&labelled_edge(), &k3).unwrap().soe_value(), n(6));
    assert_eq!(hom_tensor(&labelled_edge(), &c4).unwrap().soe_value(), n(8));
    let a = hom_matrix(&generator(Letter::Edge(0, 1), 2, false).unwrap(), &c4).unwrap();
    let j = hom_matrix(&generator(Letter::Forget(0), 2, false).unwrap(), &c4).unwrap();
    for x in 0..16 {
        for y in 0..16 {
            let (xs, ys) = (index_tuple(x, 4, 2), index_tuple(y, 4, 2));
            let want = u64::from(x == y && c4.has_edge(xs[0], xs[1]));
            assert_eq!(a.get(x, y), &n(want));
            assert_eq!(j.get(x, y), &n(u64::from(xs[1] == ys[1])));
        }
    }
}

#[test]
fn decoding_words_and_terms() {
    assert_eq!(pw_decode(&[], 2, false).unwrap(), LabelledGraph::one(2, false).unwrap());
    let e = pw_decode(&parse_word("A12").unwrap(), 2, false).unwrap();
    assert!(is_isomorphic(&soe(&e), &make_complete(2)).unwrap());
    let p = pw_decode(&parse_word("A12 J1 A12").unwrap(), 2, false).unwrap();
    assert!(is_isomorphic(&soe(&p), &make_path(3).unwrap()).unwrap());
    assert!(pathwidth(&soe(&p)).unwrap() <= 1);

    let leaf = || Term::leaf(LEAF_SYMBOL);
    assert_eq!(tw_decode(&leaf(), 2, false).unwrap(), LabelledGraph::one(2, false).unwrap());
    let edge = || Term::node("A12", vec![leaf()]);
    let doubled = tw_decode(&Term::node(GLUE_SYMBOL, vec![edge(), edge()]), 2, false).unwrap();
    assert_eq!(doubled.graph().edge_count(), 1);
    // a path 1–x–2 with x forgotten, glued to itself along labels 1 and 2: a 4-cycle
    let path = || Term::node("J3", vec![Term::node("A23", vec![Term::node("A13", vec![leaf()])])]);
    let square = tw_decode(&Term::node(GLUE_SYMBOL, vec![path(), path()]), 3, false).unwrap();
    let c4k1 = disjoint_union(&make_cycle(4, false).unwrap(), &Graph::new(1, false)).unwrap();
    assert!(is_isomorphic(&soe(&square), &c4k1).unwrap());
    let k3 = make_complete(3);
    assert_eq!(hom_tensor(&square, &k3).unwrap().soe_value(), hom_count(&c4k1, &k3).unwrap());
}

fn scalar(x: i64) -> Mwa {
    Mwa::from_dense(&["a"], &[m(&[&[x]])], &[q(1)], &[q(1)]).unwrap()
}

fn random_mwa(rng: &mut impl Rng, states: usize) -> Mwa {
    let mut v = |k: usize| (0..k).map(|_| q(rng.gen_range(-2..=2))).collect::<Vec<_>>();
    let mats: Vec<QMatrix> = (0..2).map(|_| QMatrix::from_vec(states, states, v(states * states)).unwrap()).collect();
    let (alpha, eta) = (v(states), v(states));
    Mwa::from_dense(&["a", "b"], &mats, &alpha, &eta).unwrap()
}

fn words(max_len: usize) -> Vec<Vec<&'static str>> {
    let mut out = vec![vec![]];
    for len in 1..=max_len {
        for bits in 0..1u32 << len {
            out.push((0..len).map(|i| if bits >> i & 1 == 1 { "b" } else { "a" }).collect());
        }
    }
    out
}

#[test]
fn word_automaton_evaluation() {
    let mut rng = common::rng(4);
    let a = random_mwa(&mut rng, 2);
    let empty: [&str; 0] = [];
    let alpha_eta: Rational = (0..2)
        .map(|i| a.initial().to_dense()[i].clone() * a.final_vec().to_dense()[i].clone())
        .fold(q(0), |s, x| s + x);
    assert_eq!(a.eval(&empty).unwrap(), alpha_eta);
    for k in 0..6 {
        assert_eq!(scalar(2).eval(&vec!["a"; k]).unwrap(), q(1 << k));
    }
    let zero = Mwa::zero(vec!["a".into()]).unwrap();
    assert!(words(3).iter().filter(|w| !w.contains(&"b")).all(|w| zero.eval(w).unwrap() == q(0)));
}

#[test]
fn automaton_algebra() {
    let mut rng = common::rng(5);
    let (a, b) = (random_mwa(&mut rng, 2), random_mwa(&mut rng, 2));
    let diff = a.minus(&a).unwrap();
    let prod = a.kron(&b).unwrap();
    let zero_sum = Mwa::zero(vec!["a".into(), "b".into()]).unwrap().sum(&a).unwrap();
    for w in words(4) {
        assert_eq!(diff.eval(&w).unwrap(), q(0));
        assert_eq!(prod.eval(&w).unwrap(), a.eval(&w).unwrap() * b.eval(&w).unwrap());
        assert_eq!(zero_sum.eval(&w).unwrap(), a.eval(&w).unwrap());
    }
}

#[test]
fn tree_automata_extend_word_automata() {
    let mut rng = common::rng(6);
    let a = random_mwa(&mut rng, 3);
    let t = Mta::from_mwa(&a, "end").unwrap();
    for w in words(4) {
        assert_eq!(t.eval(&Term::from_word(&w, "end")).unwrap(), a.eval(&w).unwrap());
    }
}

#[test]
fn zero_tests() {
    let zero = Mwa::zero(vec!["a".into()]).unwrap();
    assert!(mwa_is_zero_basis(&zero).equivalent);
    assert!(mwa_is_zero_rank(&zero));
    let mut rng = common::rng(7);
    let a = random_mwa(&mut rng, 2);
    assert!(mwa_is_zero_basis(&a.minus(&a).unwrap()).equivalent);
    assert!(mwa_is_zero_rank(&a.minus(&a).unwrap()));
    assert!(!mwa_is_zero_rank(&scalar(1)));
    // α = 1, η = 1 against η = −1: the empty word already differs
    let neg = Mwa::from_dense(&["a"], &[m(&[&[1]])], &[q(1)], &[q(-1)]).unwrap();
    let v = mwa_equiv(&scalar(1), &neg).unwrap();
    assert_eq!(v.witness, Some(Witness::Word(vec![])));
    assert_eq!(v.values, Some((q(1), q(-1))));
}

#[test]
fn forward_bases() {
    let silent = Mwa::from_dense(&["a"], &[m(&[&[2]])], &[q(0)], &[q(1)]).unwrap();
    assert!(mwa_forward_basis(&silent).is_empty());
    assert_eq!(mwa_forward_basis(&scalar(2)).len(), 1);
    for s in 1..=4 {
        let mut shift = QMatrix::zeros(s, s);
        for i in 0..s - 1 {
            shift[(i, i + 1)] = q(1);
        }
        let mut alpha = vec![q(0); s];
        alpha[0] = q(1);
        let a = Mwa::from_dense(&["a"], &[shift], &alpha, &vec![q(0); s]).unwrap();
        assert_eq!(mwa_forward_basis(&a).len(), s);
    }
}

#[test]
fn word_equivalence_examples() {
    let v = mwa_equiv(&scalar(2), &scalar(3)).unwrap();
    assert_eq!(v.witness, Some(Witness::Word(vec!["a".into()])));
    assert_eq!(v.values, Some((q(2), q(3))));
    assert!(mwa_equiv(&scalar(2), &scalar(2)).unwrap().equivalent);
}

#[test]
fn tree_equivalence_examples() {
    let mut rng = common::rng(8);
    for _ in 0..20 {
        let a = Mta::from_mwa(&random_mwa(&mut rng, 3), "end").unwrap();
        let b = Mta::from_mwa(&random_mwa(&mut rng, 2), "end").unwrap();
        assert!(mta_equiv(&a, &a).unwrap().equivalent);
        let exact = mta_equiv(&a, &b).unwrap();
        let sampled = mta_equiv_randomised(&a, &b, 50, 9).unwrap();
        // the randomised check only ever errs towards "equivalent"
        assert!(!(exact.equivalent && !sampled.equivalent));
    }
}
