//! Dense row-major matrices over a [`Scalar`] field.

use std::ops::{Index, IndexMut};

use super::scalar::{Scalar, C64};
use crate::error::{Error, Result};

/// Dense `rows x cols` matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Square matrices share the general representation; square-only operations
/// check the shape and return [`Error::NotSquare`].
pub type SquareMatrix<S> = Matrix<S>;

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
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

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        self.data[i * self.cols + j] = value;
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_c64(&self) -> Matrix<C64> {
        self.map(Scalar::to_c64)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn conj(&self) -> Self {
        self.map(Scalar::conj)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * other.get(k, j).clone();
                }
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn trace(&self) -> Result<S> {
        let n = self.require_square()?;
        Ok((0..n).fold(S::zero(), |acc, i| acc + self.get(i, i).clone()))
    }

    /// `tr(A^p)` for `p = 1..=max_power`.
    pub fn power_traces(&self, max_power: usize) -> Result<Vec<S>> {
        self.require_square()?;
        let mut out = Vec::with_capacity(max_power);
        let mut power = self.clone();
        for p in 1..=max_power {
            out.push(power.trace()?);
            if p < max_power {
                power = power.mul(self)?;
            }
        }
        Ok(out)
    }

    /// Submatrix `(a_{i_p, i_q})` for an index sequence; repetitions allowed.
    pub fn principal(&self, idx: &[usize]) -> Result<Self> {
        let n = self.require_square()?;
        if let Some(&bad) = idx.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad, bound: n });
        }
        Ok(Self::from_fn(idx.len(), idx.len(), |p, q| self.get(idx[p], idx[q]).clone()))
    }

    /// Rows `row_idx`, columns `col_idx`.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Self> {
        if let Some(&bad) = row_idx.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange { index: bad, bound: self.rows });
        }
        if let Some(&bad) = col_idx.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange { index: bad, bound: self.cols });
        }
        Ok(Self::from_fn(row_idx.len(), col_idx.len(), |p, q| {
            self.get(row_idx[p], col_idx[q]).clone()
        }))
    }

    /// Stacks `[[a, b], [c, d]]`.
    pub fn block2x2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("incompatible 2x2 block layout".into()));
        }
        let (r1, c1) = (a.rows, a.cols);
        Ok(Self::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| match (i < r1, j < c1) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - c1).clone(),
            (false, true) => c.get(i - r1, j).clone(),
            (false, false) => d.get(i - r1, j - c1).clone(),
        }))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Pivot choice: largest magnitude for floats, first nonzero for exact fields.
    fn pivot_row(&self, col: usize, from: usize) -> Option<usize> {
        if S::EXACT {
            (from..self.rows).find(|&i| !self.get(i, col).is_zero())
        } else {
            let (best, mag) = (from..self.rows)
                .map(|i| (i, self.get(i, col).magnitude()))
                .fold((from, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            (mag > 0.0).then_some(best)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Result<S> {
        let n = self.require_square()?;
        let mut a = self.clone();
        let mut det = S::one();
        for k in 0..n {
            let Some(p) = a.pivot_row(k, k) else {
                return Ok(S::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det = det * pivot.clone();
            for i in k + 1..n {
                let factor = a.get(i, k).clone() / pivot.clone();
                if factor.is_zero() {
                    continue;
                }
                for j in k + 1..n {
                    let v = a.get(i, j).clone() - factor.clone() * a.get(k, j).clone();
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let p = a
                .pivot_row(k, k)
                .filter(|&p| S::EXACT || a.get(p, k).magnitude() > 1e-14 * scale)
                .ok_or_else(|| Error::Singular(format!("no pivot in column {k}")))?;
            a.swap_rows(p, k);
            inv.swap_rows(p, k);
            let pivot = a.get(k, k).clone();
            for j in 0..n {
                a.set(k, j, a.get(k, j).clone() / pivot.clone());
                inv.set(k, j, inv.get(k, j).clone() / pivot.clone());
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let factor = a.get(i, k).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(i, j).clone() - factor.clone() * a.get(k, j).clone();
                    a.set(i, j, v);
                    let w = inv.get(i, j).clone() - factor.clone() * inv.get(k, j).clone();
                    inv.set(i, j, w);
                }
            }
        }
        Ok(inv)
    }
}

impl Matrix<C64> {
    /// Operator 2-norm (largest singular value).
    pub fn operator_norm(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        self.to_nalgebra().singular_values().max()
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<C64> {
        nalgebra::DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub fn from_nalgebra(m: &nalgebra::DMatrix<C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}
