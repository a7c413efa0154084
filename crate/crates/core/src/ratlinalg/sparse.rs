//! Sparse vectors and matrices used by the automata. Products of graph automata have
//! thousands of states but only a handful of nonzeros per row, so the dense `QMatrix`
//! is reserved for rank and spectral work.

use std::collections::{BTreeMap, HashMap};

use super::{LinalgError, QMatrix, Rational};

/// Sparse vector with strictly increasing coordinates and no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn zeros(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        SparseVec {
            dim,
            entries: vec![(i, Rational::one())],
        }
    }

    pub fn ones(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: (0..dim).map(|i| (i, Rational::one())).collect(),
        }
    }

    /// Builds from unsorted entries; duplicates are summed and zeros dropped.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, x) in entries {
            debug_assert!(i < dim);
            *map.entry(i).or_default() += &x;
        }
        SparseVec {
            dim,
            entries: map.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            dim: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let (mut a, mut b) = (0, 0);
        let mut acc = Rational::zero();
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            match i.cmp(j) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(x * y);
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zeros(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// self + c·other, merging sorted entry lists.
    pub fn add_scaled(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map_or(usize::MAX, |e| e.0);
            let ib = other.entries.get(b).map_or(usize::MAX, |e| e.0);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + &(c * &other.entries[b].1);
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec {
            dim: self.dim.max(other.dim),
            entries: out,
        }
    }

    /// Row vector times matrix.
    pub fn mul_mat(&self, m: &SparseMatrix) -> SparseVec {
        debug_assert_eq!(self.dim, m.rows);
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (i, x) in &self.entries {
            for (j, y) in m.row(*i) {
                *acc.entry(*j).or_default() += &(x * y);
            }
        }
        SparseVec::from_map(m.cols, acc)
    }

    fn from_map(dim: usize, acc: HashMap<usize, Rational>) -> SparseVec {
        let mut entries: Vec<(usize, Rational)> =
            acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        entries.sort_unstable_by_key(|e| e.0);
        SparseVec { dim, entries }
    }

    pub fn kron(&self, other: &SparseVec) -> SparseVec {
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * other.dim + j, x * y));
            }
        }
        SparseVec {
            dim: self.dim * other.dim,
            entries,
        }
    }

    pub fn concat(&self, other: &SparseVec) -> SparseVec {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(j, y)| (j + self.dim, y.clone())));
        SparseVec {
            dim: self.dim + other.dim,
            entries,
        }
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&Rational::from(-1))
    }

    pub fn first(&self) -> Option<&(usize, Rational)> {
        self.entries.first()
    }
}

/// Sparse matrix stored as a map from row index to a sorted sparse row. Absent rows are
/// zero, which keeps tree-automaton transitions with s^2 rows affordable.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: BTreeMap<usize, Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zeros(n, n);
        for i in 0..n {
            m.data.insert(i, vec![(i, Rational::one())]);
        }
        m
    }

    pub fn from_dense(m: &QMatrix) -> Self {
        let mut out = SparseMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            let row = SparseVec::from_dense(m.row(i));
            if !row.is_zero() {
                out.data.insert(i, row.entries);
            }
        }
        out
    }

    pub fn to_dense(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.rows, self.cols);
        for (i, row) in &self.data {
            for (j, x) in row {
                m[(*i, *j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.values().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        self.data.get(&i).map_or(&[], Vec::as_slice)
    }

    /// Iterates over the nonzero rows in increasing order.
    pub fn nonzero_rows(&self) -> impl Iterator<Item = (usize, &[(usize, Rational)])> {
        self.data.iter().map(|(i, r)| (*i, r.as_slice()))
    }

    /// Adds `x` at (i, j); zero entries are dropped.
    pub fn add_entry(&mut self, i: usize, j: usize, x: Rational) {
        debug_assert!(i < self.rows && j < self.cols);
        if x.is_zero() {
            return;
        }
        let row = self.data.entry(i).or_default();
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(p) => {
                row[p].1 += &x;
                if row[p].1.is_zero() {
                    row.remove(p);
                    if row.is_empty() {
                        self.data.remove(&i);
                    }
                }
            }
            Err(p) => row.insert(p, (j, x)),
        }
    }

    pub fn set_row(&mut self, i: usize, row: SparseVec) -> Result<(), LinalgError> {
        if i >= self.rows || row.dim() != self.cols {
            return Err(LinalgError::Shape(format!(
                "row {i} of dimension {} in a {}x{} matrix",
                row.dim(),
                self.rows,
                self.cols
            )));
        }
        if row.is_zero() {
            self.data.remove(&i);
        } else {
            self.data.insert(i, row.entries);
        }
        Ok(())
    }

    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, ra) in &self.data {
            for (k, rb) in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (j, x) in ra {
                    for (l, y) in rb {
                        row.push((j * other.cols + l, x * y));
                    }
                }
                out.data.insert(i * other.rows + k, row);
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        out.data = self.data.clone();
        for (i, r) in &other.data {
            out.data.insert(
                i + self.rows,
                r.iter().map(|(j, x)| (j + self.cols, x.clone())).collect(),
            );
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (i, r) in &self.data {
            let v = SparseVec {
                dim: self.cols,
                entries: r.clone(),
            }
            .mul_mat(other);
            if !v.is_zero() {
                out.data.insert(*i, v.entries);
            }
        }
        Ok(out)
    }
}

/// Incrementally built row-echelon basis. Every stored vector has leading coefficient one
/// at a pivot no other stored vector leads with; vectors are only ever reduced forwards,
/// so block structure in the inputs is preserved.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        EchelonBasis::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis and returns the remainder.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let mut from = 0usize;
        loop {
            let hit = v
                .entries
                .iter()
                .find(|(i, _)| *i >= from && self.pivots.contains_key(i))
                .map(|(i, x)| (*i, x.clone()));
            let Some((i, x)) = hit else { break };
            let b = &self.rows[self.pivots[&i]];
            v = v.add_scaled(&-x, b);
            from = i + 1;
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v` if it is independent; returns whether it was.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((p, lead)) = r.first().cloned() else {
            return false;
        };
        let lead_inv = lead.recip().expect("leading entry is nonzero");
        self.pivots.insert(p, self.rows.len());
        self.rows.push(r.scale(&lead_inv));
        true
    }
}
