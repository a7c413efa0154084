use crate::automata::Mwa;
use crate::ratlinalg::{QMatrix, SparseMatrix};

use super::{EquivError, EquivVerdict, Method};

/// The augmented system [A | b] of the linear characterisation for an automaton with n > 0
/// states. With A₂ = A ⊗ A and T₂ = Σ_a M(a) ⊗ M(a), the unknowns are x_0, …, x_{n−1} in
/// Q^{n²}: the block rows force x_0 = η₂ and x_k = T₂ x_{k−1}, and the last row asks
/// Σ_k α₂ x_k = 0. The series is zero iff this system is consistent.
pub fn rank_system(a: &Mwa) -> QMatrix {
    let n = a.states();
    let n2 = n * n;
    let cols = n * n2;
    let alpha2 = a.initial().kron(a.initial()).to_dense();
    let eta2 = a.final_vec().kron(a.final_vec()).to_dense();
    let mut t2 = SparseMatrix::zeros(n2, n2);
    for l in 0..a.alphabet().len() {
        let m = a.transition(l);
        for (r, row) in m.kron(m).nonzero_rows() {
            for (c, x) in row {
                t2.add_entry(r, *c, x.clone());
            }
        }
    }
    let mut sys = QMatrix::zeros(cols + 1, cols + 1);
    for k in 0..n {
        for i in 0..n2 {
            sys[(k * n2 + i, k * n2 + i)] = crate::ratlinalg::Rational::one();
        }
        if k > 0 {
            for (r, row) in t2.nonzero_rows() {
                for (c, x) in row {
                    sys[(k * n2 + r, (k - 1) * n2 + c)] = -x;
                }
            }
        }
    }
    for (i, e) in eta2.into_iter().enumerate() {
        sys[(i, cols)] = e;
    }
    for k in 0..n {
        for (i, x) in alpha2.iter().enumerate() {
            sys[(cols, k * n2 + i)] = x.clone();
        }
    }
    sys
}

/// Zero test by rank: zero iff rank([A|b]) < n³ + 1. The 0-state automaton is zero.
pub fn mwa_is_zero_rank(a: &Mwa) -> bool {
    let n = a.states();
    if n == 0 {
        return true;
    }
    rank_system(a).rank() < n * n * n + 1
}

/// Equivalence by the rank test of the difference automaton. Gives no witness.
pub fn mwa_equiv_rank(a: &Mwa, b: &Mwa) -> Result<EquivVerdict, EquivError> {
    let d = a.minus(b)?;
    if mwa_is_zero_rank(&d) {
        Ok(EquivVerdict::equivalent(Method::Rank))
    } else {
        Ok(EquivVerdict {
            equivalent: false,
            witness: None,
            values: None,
            method: Method::Rank,
            trials: None,
        })
    }
}
