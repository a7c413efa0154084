use crate::graphcore::{Graph, WeightedDigraph};
use crate::ratlinalg::{companion, QMatrix, QPoly, Rational};

use super::ReductionError;

fn integer_square(a: &QMatrix, name: &str) -> Result<(), ReductionError> {
    if !a.is_square() || a.rows() == 0 {
        return Err(ReductionError::Param(format!("{name} must be square and non-empty")));
    }
    if a.data().iter().any(|x| !x.is_integer()) {
        return Err(ReductionError::Param(format!("{name} must have integer entries")));
    }
    Ok(())
}

/// Non-negative 3n×3n matrices D, E with χ_D = χ_E iff χ_A = χ_B. Writing A = A⁺ − A⁻ and
/// |A| = A⁺ + A⁻:
///
/// D = [[A⁺, A⁻, 0], [A⁻, A⁺, 0], [0, 0, |B|]],  E = [[B⁺, B⁻, 0], [B⁻, B⁺, 0], [0, 0, |A|]].
///
/// The first 2n×2n block of D is similar to |A| ⊕ A, so χ_D = χ_|A| χ_A χ_|B|.
pub fn posdet_lift(a: &QMatrix, b: &QMatrix) -> Result<(QMatrix, QMatrix), ReductionError> {
    integer_square(a, "A")?;
    integer_square(b, "B")?;
    if a.rows() != b.rows() {
        return Err(ReductionError::Param(format!("sizes {} and {} differ", a.rows(), b.rows())));
    }
    Ok((lift(a, b), lift(b, a)))
}

fn lift(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let n = a.rows();
    let pos = |x: &Rational| if x.is_negative() { Rational::zero() } else { x.clone() };
    let neg = |x: &Rational| if x.is_negative() { -x } else { Rational::zero() };
    let mut d = QMatrix::zeros(3 * n, 3 * n);
    for i in 0..n {
        for j in 0..n {
            let x = &a[(i, j)];
            d[(i, j)] = pos(x);
            d[(n + i, n + j)] = pos(x);
            d[(i, n + j)] = neg(x);
            d[(n + i, j)] = neg(x);
            d[(2 * n + i, 2 * n + j)] = b[(i, j)].abs();
        }
    }
    d
}

/// VCP instance (A, q) to a pair of non-negative matrices: B is the companion matrix of
/// q(λ) = λ^n + Σ c_i λ^i, and the pair is posdet_lift(A, B).
pub fn vcp_to_pair(a: &QMatrix, coeffs: &[Rational]) -> Result<(QMatrix, QMatrix), ReductionError> {
    integer_square(a, "A")?;
    if coeffs.len() != a.rows() {
        return Err(ReductionError::Param(format!("{} coefficients for a {}x{} matrix", coeffs.len(), a.rows(), a.rows())));
    }
    let b = companion(&QPoly::monic_from_lower(coeffs))?;
    posdet_lift(a, &b)
}

/// Gadget length for a weighted digraph: the bit length of the largest weight, at least 1.
pub fn bit_gadget_period(a: &WeightedDigraph) -> usize {
    let max = (0..a.n()).flat_map(|u| (0..a.n()).map(move |v| (u, v))).map(|(u, v)| a.weight(u, v)).max().unwrap_or(0);
    (u64::BITS - max.leading_zeros()).max(1) as usize
}

/// Simple digraph G and period b such that closed walks of G of length ℓ exist only when
/// b divides ℓ and hom(C⃗_{kb}, G) = b·tr(A^k): the extra factor b counts the start
/// positions inside a gadget, so the two sides agree exactly when b = 1.
///
/// For every arc u→v of weight m and every set bit i of m a gadget B_{i,b} is added: a
/// u→v path x_0 … x_b whose internal vertices x_1 … x_i are duplicated, giving exactly 2^i
/// walks of length b. Vertices: the n original ones, then gadgets in (u, v, i) order, each
/// listing x_1 … x_{b−1} followed by the duplicates of x_1 … x_i.
pub fn weighted_to_simple(a: &WeightedDigraph) -> Result<(Graph, usize), ReductionError> {
    let b = bit_gadget_period(a);
    let mut g = Graph::new(a.n(), true);
    for u in 0..a.n() {
        for v in 0..a.n() {
            let m = a.weight(u, v);
            for i in (0..b).filter(|&i| m >> i & 1 == 1) {
                add_gadget(&mut g, u, v, i, b)?;
            }
        }
    }
    Ok((g, b))
}

fn add_gadget(g: &mut Graph, u: usize, v: usize, i: usize, b: usize) -> Result<(), ReductionError> {
    if b == 1 {
        g.add_edge(u, v)?;
        return Ok(());
    }
    let main: Vec<usize> = (1..b).map(|_| g.add_vertex(None).expect("uncoloured")).collect();
    let twins: Vec<usize> = (0..i).map(|_| g.add_vertex(None).expect("uncoloured")).collect();
    // layer t of the path holds x_t and, for t ≤ i, its twin
    let mut layers: Vec<Vec<usize>> = vec![vec![u]];
    for (t, &x) in main.iter().enumerate() {
        let mut layer = vec![x];
        layer.extend(twins.get(t));
        layers.push(layer);
    }
    layers.push(vec![v]);
    for w in layers.windows(2) {
        for &x in &w[0] {
            for &y in &w[1] {
                g.add_edge(x, y)?;
            }
        }
    }
    Ok(())
}
