//! Dense exact-rational matrices and canonical subspace arithmetic.
//!
//! Everything downstream (exterior algebra, differentials, Laplacians,
//! cohomology ranks) reduces to the operations here. Two properties matter
//! more than speed at the sizes this crate sees (ambient dimension at most
//! `C(8,4) = 70`):
//!
//! * exactness - all elimination is over the rationals, so ranks and kernel
//!   dimensions are true integers, and
//! * determinism - subspaces are stored in a canonical reduced echelon basis,
//!   so two equal subspaces compare equal entry for entry and repeated runs
//!   produce byte-identical reports.

use crate::error::Error;
use crate::rational::{one, zero, Rational};
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(data: Vec<Vec<Rational>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        for row in &data {
            assert_eq!(row.len(), cols, "ragged rows");
        }
        Matrix {
            rows,
            cols,
            entries: data.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(ambient: usize, columns: &[Vec<Rational>]) -> Self {
        for col in columns {
            assert_eq!(col.len(), ambient, "column length mismatch");
        }
        Matrix::from_fn(ambient, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> Vec<Rational> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self.get(r, c) != self.get(c, r) {
                    return false;
                }
            }
        }
        true
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c).clone();
                        out.set(r, c, cur + a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc += a * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + other.get(r, c))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - other.get(r, c))
    }

    pub fn scale(&self, factor: &Rational) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * factor)
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self.get(r, c))
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        Matrix::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows {
                self.get(r, c).clone()
            } else {
                other.get(r - self.rows, c).clone()
            }
        })
    }

    /// Reduced row-echelon form together with the pivot column list.
    ///
    /// The pivot in each column is the first nonzero entry scanning down,
    /// so the result is fully deterministic; rref of a matrix is unique
    /// regardless, but this also fixes the elimination path.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(src) = found else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.get(pivot_row, c).clone();
                    let b = m.get(src, c).clone();
                    m.set(pivot_row, c, b);
                    m.set(src, c, a);
                }
            }
            let inv = {
                let p = m.get(pivot_row, col).clone();
                one() / p
            };
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(pivot_row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{ v : M v = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let (rref, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut map = vec![None; self.cols];
            for (row, &col) in pivots.iter().enumerate() {
                map[col] = Some(row);
            }
            map
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = vec![zero(); self.cols];
            v[free] = one();
            for (col, slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    v[col] = -rref.get(*row, free).clone();
                }
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// Any solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(self.rows, b.len(), "rhs length mismatch");
        let rhs = Matrix::from_columns(self.rows, &[b.to_vec()]);
        let (red, pivots) = self.hstack(&rhs).rref();
        // inconsistent iff the rhs column is a pivot
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![zero(); self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            x[col] = red.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = one();
        for col in 0..n {
            let found = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(src) = found else {
                return zero();
            };
            if src != col {
                det = -det;
                for c in 0..n {
                    let a = m.get(col, c).clone();
                    let b = m.get(src, c).clone();
                    m.set(col, c, b);
                    m.set(src, c, a);
                }
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in (col + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for c in col..n {
                    let v = m.get(r, c) - &factor * m.get(col, c);
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (red, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }

    /// Exact Sylvester criterion: positive leading principal minors.
    pub fn is_positive_definite(&self) -> Result<bool, Error> {
        if self.rows != self.cols {
            return Err(Error::NotSquare);
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        for k in 1..=self.rows {
            let minor = Matrix::from_fn(k, k, |r, c| self.get(r, c).clone());
            if !minor.determinant().is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| crate::rational::fmt_rational(self.get(r, c)))
                .collect();
            writeln!(f, "[ {} ]", row.join(" "))?;
        }
        Ok(())
    }
}

/// A linear subspace of `Q^ambient`, stored through a canonical basis.
///
/// The basis columns are the rows of the unique reduced row-echelon form of
/// any spanning set, so equal subspaces have identical representations and
/// `PartialEq` is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    /// `ambient_dim x dim` matrix; columns form the canonical basis.
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(ambient_dim, 0),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// Canonicalizes a spanning set (rows reduced, zero rows dropped).
    pub fn from_vectors(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "vector length mismatch");
        }
        if vectors.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        let (red, pivots) = Matrix::from_rows(vectors).rref();
        let basis = Matrix::from_fn(ambient_dim, pivots.len(), |r, c| red.get(c, r).clone());
        Subspace { ambient_dim, basis }
    }

    /// Span of the columns of `m`.
    pub fn from_column_span(m: &Matrix) -> Self {
        let vectors = (0..m.cols()).map(|c| m.column(c)).collect();
        Subspace::from_vectors(m.rows(), vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Columns are the canonical basis vectors.
    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|c| self.basis.column(c)).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        Ok(Subspace::from_vectors(self.ambient_dim, vectors))
    }

    /// Exact intersection via the kernel of the concatenated basis system:
    /// `A x = B y` has solution space projecting onto the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let stacked = self.basis.hstack(&other.basis.neg());
        let ker = stacked.kernel();
        let vectors: Vec<Vec<Rational>> = ker
            .basis_vectors()
            .into_iter()
            .map(|xy| {
                let x = &xy[..self.dim()];
                self.basis.mul_vec(x)
            })
            .collect();
        Ok(Subspace::from_vectors(self.ambient_dim, vectors))
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        if v.iter().all(Rational::is_zero) {
            return true;
        }
        let mut vectors = self.basis_vectors();
        vectors.push(v.to_vec());
        Subspace::from_vectors(self.ambient_dim, vectors).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && match self.sum(other) {
                Ok(s) => s.dim() == other.dim(),
                Err(_) => false,
            }
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "subspaces live in Q^{} and Q^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}
