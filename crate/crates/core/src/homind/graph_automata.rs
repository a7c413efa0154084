use crate::automata::{Mta, Mwa};
use crate::graphcore::Graph;
use crate::labelled::{index_tuple, letters, tuple_index, Letter, GLUE_SYMBOL, LEAF_SYMBOL};
use crate::ratlinalg::{Rational, SparseMatrix, SparseVec};

use super::HomIndError;

/// Homomorphism matrix L_G of a generator letter on states V(G)^k.
/// Edge letters are diagonal with entry [x_i x_j ∈ E(G)]; J_i has entry Π_{l≠i} [x_l = y_l].
pub fn letter_matrix(g: &Graph, k: usize, letter: Letter) -> SparseMatrix {
    let n = g.n();
    let s = n.pow(k as u32);
    let mut m = SparseMatrix::zeros(s, s);
    for x in 0..s {
        let t = index_tuple(x, n, k);
        match letter {
            Letter::Edge(i, j) => {
                if g.has_edge(t[i], t[j]) {
                    m.add_entry(x, x, Rational::one());
                }
            }
            Letter::Forget(i) => {
                let mut y = t.clone();
                for v in 0..n {
                    y[i] = v;
                    m.add_entry(x, tuple_index(&y, n), Rational::one());
                }
            }
        }
    }
    m
}

fn check(g: &Graph, k: usize) -> Result<usize, HomIndError> {
    if g.n() == 0 {
        return Err(HomIndError::Mode("graph automata need at least one vertex".into()));
    }
    if k == 0 {
        return Err(HomIndError::Spec("k must be at least 1".into()));
    }
    g.n()
        .checked_pow(k as u32)
        .ok_or_else(|| HomIndError::Mode("too many states".into()))
}

/// A_G: states V(G)^k, M(L) = L_G, α = η = all-ones. Evaluates a word to
/// hom(soe(pw_decode(w)), G).
pub fn build_graph_mwa(g: &Graph, k: usize) -> Result<Mwa, HomIndError> {
    let s = check(g, k)?;
    let alphabet = letters(k, g.is_directed());
    let transitions = alphabet.iter().map(|&l| letter_matrix(g, k, l)).collect();
    Ok(Mwa::new(
        s,
        alphabet.iter().map(Letter::to_string).collect(),
        transitions,
        SparseVec::ones(s),
        SparseVec::ones(s),
    )?)
}

/// Tree version: the leaf is the all-ones row, letters act by L_G and glue is the diagonal
/// selector ((x, y), z) ↦ [x = y = z], so glue multiplies entrywise.
pub fn build_graph_mta(g: &Graph, k: usize) -> Result<Mta, HomIndError> {
    let s = check(g, k)?;
    let alphabet = letters(k, g.is_directed());
    let mut symbols = vec![(LEAF_SYMBOL.to_string(), 0)];
    let mut leaf = SparseMatrix::zeros(1, s);
    leaf.set_row(0, SparseVec::ones(s)).expect("row fits");
    let mut transitions = vec![leaf];
    for &l in &alphabet {
        symbols.push((l.to_string(), 1));
        transitions.push(letter_matrix(g, k, l));
    }
    symbols.push((GLUE_SYMBOL.to_string(), 2));
    let mut glue = SparseMatrix::zeros(s * s, s);
    for x in 0..s {
        glue.add_entry(x * s + x, x, Rational::one());
    }
    transitions.push(glue);
    Ok(Mta::new(s, symbols, transitions, SparseVec::ones(s))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{make_complete, make_cycle};
    use crate::labelled::{generator, hom_matrix};
    use num_traits::ToPrimitive;

    #[test]
    fn letter_matrices_match_hom_tensors() {
        let g = make_cycle(4, false).unwrap();
        for k in [1, 2] {
            for l in letters(k, false) {
                let m = letter_matrix(&g, k, l).to_dense();
                let h = hom_matrix(&generator(l, k, false).unwrap(), &g).unwrap();
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        assert_eq!(m[(i, j)].to_i64().unwrap(), h.get(i, j).to_i64().unwrap());
                    }
                }
            }
        }
        let d = crate::graphcore::Graph::directed(3, &[(0, 0), (0, 1), (2, 1)]);
        for l in letters(2, true) {
            let m = letter_matrix(&d, 2, l).to_dense();
            let h = hom_matrix(&generator(l, 2, true).unwrap(), &d).unwrap();
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    assert_eq!(m[(i, j)].to_i64().unwrap(), h.get(i, j).to_i64().unwrap());
                }
            }
        }
    }

    #[test]
    fn spec_examples() {
        let c4 = make_cycle(4, false).unwrap();
        let a = build_graph_mwa(&c4, 2).unwrap();
        assert_eq!(a.eval::<&str>(&[]).unwrap(), Rational::from(16));
        assert_eq!(a.eval(&["A12"]).unwrap(), Rational::from(8));
        let t = build_graph_mta(&make_complete(3), 2).unwrap();
        assert_eq!(t.eval(&"1".parse().unwrap()).unwrap(), Rational::from(9));
        assert_eq!(t.eval(&"glue(A12(1),A12(1))".parse().unwrap()).unwrap(), Rational::from(6));
        assert!(build_graph_mwa(&crate::graphcore::Graph::new(0, false), 2).is_err());
    }
}
