use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LinalgError, QPoly, Rational};

/// Dense row-major matrix over the rationals. Zero-sized dimensions are allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        QMatrix::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data: Vec<Vec<Rational>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        QMatrix::from_rows(data).expect("ragged integer rows")
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let mut m = QMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn row_vector(entries: Vec<Rational>) -> Self {
        QMatrix {
            rows: 1,
            cols: entries.len(),
            data: entries,
        }
    }

    pub fn col_vector(entries: Vec<Rational>) -> Self {
        QMatrix {
            rows: entries.len(),
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Rational> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(QMatrix { data, ..*self })
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(QMatrix { data, ..*self })
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            data: self.data.iter().map(|x| x * c).collect(),
            ..*self
        }
    }

    pub fn neg(&self) -> QMatrix {
        self.scale(&Rational::from(-1))
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<QMatrix, LinalgError> {
        self.require_square()?;
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Rational, LinalgError> {
        self.require_square()?;
        Ok((0..self.rows).map(|i| self[(i, i)].clone()).sum())
    }

    /// Kronecker product; entry ((i,k),(j,l)) = self(i,j) * other(k,l), row-major pairing.
    pub fn kron(&self, other: &QMatrix) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Block-diagonal sum with `self` in the upper-left block.
    pub fn direct_sum(&self, other: &QMatrix) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Exact rank via fraction-free (Bareiss) elimination on a row-scaled integer copy.
    pub fn rank(&self) -> usize {
        let mut m = self.integer_rows();
        bareiss_rank(&mut m, self.cols)
    }

    /// Characteristic polynomial det(λI − A) by Faddeev–LeVerrier.
    pub fn char_poly(&self) -> Result<QPoly, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
        let mut m = QMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m)?;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self.mul(&next)?;
            let tr = am.trace()?;
            coeffs[n - k] = -(&tr / &Rational::from(k as i64));
            m = next;
        }
        Ok(QPoly::new(coeffs))
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect()
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare(self.rows, self.cols))
        }
    }

    fn same_shape(&self, other: &QMatrix) -> Result<(), LinalgError> {
        if self.rows == other.rows && self.cols == other.cols {
            Ok(())
        } else {
            Err(LinalgError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )))
        }
    }
}

fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix{:?}", self.to_rows())
    }
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal, last column −c_0..−c_{n−1}.
pub fn companion(q: &QPoly) -> Result<QMatrix, LinalgError> {
    let n = q.degree().ok_or(LinalgError::NotMonic)?;
    if n == 0 || !q.leading().is_some_and(Rational::is_one) {
        return Err(LinalgError::NotMonic);
    }
    let mut m = QMatrix::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Rational::one();
    }
    for i in 0..n {
        m[(i, n - 1)] = -q.coeff(i);
    }
    Ok(m)
}

/// Power traces tr(A^k) for k = 1..=count.
pub fn power_traces(a: &QMatrix, count: usize) -> Result<Vec<Rational>, LinalgError> {
    a.require_square()?;
    let mut out = Vec::with_capacity(count);
    let mut p = QMatrix::identity(a.rows());
    for _ in 0..count {
        p = p.mul(a)?;
        out.push(p.trace()?);
    }
    Ok(out)
}

/// Equality of characteristic polynomials decided through power traces (Newton's identities).
pub fn newton_charpoly_equal(a: &QMatrix, b: &QMatrix) -> Result<bool, LinalgError> {
    a.require_square()?;
    b.require_square()?;
    if a.rows() != b.rows() {
        return Err(LinalgError::Shape(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let n = a.rows();
    let mut pa = QMatrix::identity(n);
    let mut pb = QMatrix::identity(n);
    for _ in 0..n {
        pa = pa.mul(a)?;
        pb = pb.mul(b)?;
        if pa.trace()? != pb.trace()? {
            return Ok(false);
        }
    }
    Ok(true)
}
