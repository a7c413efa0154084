use num_bigint::BigUint;
use num_traits::Zero;

use crate::graphcore::{hom_count_pinned, Graph};

use super::{BilabelledGraph, LabelledError, LabelledGraph};

/// Position of a k-tuple over 0..base, label 1 most significant.
pub fn tuple_index(t: &[usize], base: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * base + x)
}

/// Inverse of [`tuple_index`].
pub fn index_tuple(mut i: usize, base: usize, k: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for slot in t.iter_mut().rev() {
        *slot = i % base;
        i /= base;
    }
    t
}

/// Homomorphism tensor of a k-labelled graph: entry v counts homomorphisms sending the
/// labels to v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTensor {
    pub k: usize,
    pub base: usize,
    pub entries: Vec<BigUint>,
}

/// Homomorphism tensor of a bilabelled graph as a base^k × base^k matrix, row = in-labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomMatrix {
    pub k: usize,
    pub base: usize,
    pub entries: Vec<BigUint>,
}

impl HomTensor {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Entrywise product; the tensor of the glued graph.
    pub fn schur(&self, other: &HomTensor) -> Result<HomTensor, LabelledError> {
        if (self.k, self.base) != (other.k, other.base) {
            return Err(LabelledError::Arity(self.k, other.k));
        }
        Ok(HomTensor {
            k: self.k,
            base: self.base,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).collect(),
        })
    }

    /// Sum of entries; the homomorphism count of the unlabelled graph.
    pub fn soe_value(&self) -> BigUint {
        self.entries.iter().sum()
    }
}

impl HomMatrix {
    pub fn dim(&self) -> usize {
        self.base.pow(self.k as u32)
    }

    pub fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row * self.dim() + col]
    }

    pub fn mul(&self, other: &HomMatrix) -> Result<HomMatrix, LabelledError> {
        if (self.k, self.base) != (other.k, other.base) {
            return Err(LabelledError::Arity(self.k, other.k));
        }
        let d = self.dim();
        let mut entries = vec![BigUint::zero(); d * d];
        for i in 0..d {
            for l in 0..d {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] += a * other.get(l, j);
                }
            }
        }
        Ok(HomMatrix { k: self.k, base: self.base, entries })
    }

    /// Matrix-vector product; the tensor of the series composition with a labelled graph.
    pub fn apply(&self, v: &HomTensor) -> Result<HomTensor, LabelledError> {
        if (self.k, self.base) != (v.k, v.base) {
            return Err(LabelledError::Arity(self.k, v.k));
        }
        let d = self.dim();
        let entries = (0..d)
            .map(|i| (0..d).map(|j| self.get(i, j) * &v.entries[j]).sum())
            .collect();
        Ok(HomTensor { k: self.k, base: self.base, entries })
    }
}

fn check_target(g: &Graph) -> Result<(), LabelledError> {
    if g.n() == 0 {
        return Err(LabelledError::Mode("target graph has no vertices".into()));
    }
    Ok(())
}

/// Pinned homomorphism counts of F into G for every image of the labels.
pub fn hom_tensor(f: &LabelledGraph, g: &Graph) -> Result<HomTensor, LabelledError> {
    check_target(g)?;
    let (k, base) = (f.k(), g.n());
    let entries = (0..base.pow(k as u32))
        .map(|i| {
            let t = index_tuple(i, base, k);
            let pins: Vec<(usize, usize)> = f.labels().iter().copied().zip(t).collect();
            hom_count_pinned(f.graph(), g, &pins)
        })
        .collect::<Result<_, _>>()?;
    Ok(HomTensor { k, base, entries })
}

/// Pinned homomorphism counts of a bilabelled graph, rows indexed by in-label images.
pub fn hom_matrix(f: &BilabelledGraph, g: &Graph) -> Result<HomMatrix, LabelledError> {
    check_target(g)?;
    let (k, base) = (f.k(), g.n());
    let d = base.pow(k as u32);
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        let x = index_tuple(i, base, k);
        for j in 0..d {
            let y = index_tuple(j, base, k);
            let pins: Vec<(usize, usize)> = f
                .in_labels()
                .iter()
                .copied()
                .zip(x.iter().copied())
                .chain(f.out_labels().iter().copied().zip(y))
                .collect();
            entries.push(hom_count_pinned(f.graph(), g, &pins)?);
        }
    }
    Ok(HomMatrix { k, base, entries })
}
