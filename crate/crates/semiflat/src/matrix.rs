//! Small dense matrices over an exact field, with deterministic Gaussian
//! elimination for rank, kernel, determinant and inverse.
//!
//! Pivoting is "first nonzero entry in column order": over exact fields no
//! numerical pivoting is needed, and a fixed rule makes kernel bases and
//! ranks reproducible byte-for-byte across runs.

use std::fmt;

use crate::scalar::{CScalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("expected {rows}x{cols} entries, got {got}")]
    ShapeMismatch { rows: usize, cols: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("matrix is singular")]
    Singular,
}

/// The operations elimination needs, implemented by every level of the
/// scalar tower. `inv` returns `None` at zero.
pub trait ExactField: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl ExactField for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
}

impl ExactField for CScalar {
    fn zero() -> Self {
        CScalar::zero()
    }
    fn one() -> Self {
        CScalar::one()
    }
    fn is_zero(&self) -> bool {
        CScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
}

/// Row-major dense matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F: ExactField> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: ExactField> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch { rows, cols, got: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let data: Vec<F> = rows.into_iter().flatten().collect();
        Matrix::new(nrows, ncols, data)
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut F {
        &mut self.data[i * self.cols + j]
    }

    pub fn map<G: ExactField>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<F> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>, MatrixError> {
        self.same_shape(other)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).add(other.at(i, j))
        }))
    }

    pub fn sub(&self, other: &Matrix<F>) -> Result<Matrix<F>, MatrixError> {
        self.same_shape(other)?;
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).sub(other.at(i, j))
        }))
    }

    fn same_shape(&self, other: &Matrix<F>) -> Result<(), MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j).mul(c))
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (k, entry) in v.iter().enumerate() {
                    acc = acc.add(&self.at(i, k).mul(entry));
                }
                acc
            })
            .collect())
    }

    /// AB - BA; both matrices square of equal size.
    pub fn commutator(&self, other: &Matrix<F>) -> Result<Matrix<F>, MatrixError> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    /// Reduced row echelon form together with the pivot column list.
    /// Pivot choice: scanning columns left to right, take the first row
    /// (top to bottom) with a nonzero entry.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(r) = found else { continue };
            if r != pivot_row {
                for j in 0..m.cols {
                    m.data.swap(pivot_row * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m
                .at(pivot_row, col)
                .inv()
                .expect("pivot entry is nonzero");
            for j in col..m.cols {
                let v = m.at(pivot_row, j).mul(&inv);
                *m.at_mut(pivot_row, j) = v;
            }
            for r2 in 0..m.rows {
                if r2 == pivot_row || m.at(r2, col).is_zero() {
                    continue;
                }
                let factor = m.at(r2, col).clone();
                for j in col..m.cols {
                    let v = m.at(r2, j).sub(&factor.mul(m.at(pivot_row, j)));
                    *m.at_mut(r2, j) = v;
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

    /// Basis of the right kernel, one vector per free column in increasing
    /// column order; the free coordinate of each vector is set to one.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (col, slot) in pivot_of_col.iter().enumerate() {
                if let Some(row) = slot {
                    v[col] = r.at(*row, free).neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    pub fn det(&self) -> Result<F, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for col in 0..n {
            let found = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(r) = found else { return Ok(F::zero()) };
            if r != col {
                for j in 0..n {
                    m.data.swap(col * n + j, r * n + j);
                }
                det = det.neg();
            }
            let pivot = m.at(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("pivot entry is nonzero");
            for r2 in (col + 1)..n {
                if m.at(r2, col).is_zero() {
                    continue;
                }
                let factor = m.at(r2, col).mul(&inv);
                for j in col..n {
                    let v = m.at(r2, j).sub(&factor.mul(m.at(col, j)));
                    *m.at_mut(r2, j) = v;
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix<F>, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        // Eliminate on [self | I]; the right block becomes the inverse.
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.at(i, j).clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (reduced, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(MatrixError::Singular);
        }
        aug = reduced;
        Ok(Matrix::from_fn(n, n, |i, j| aug.at(i, j + n).clone()))
    }
}
