use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Relative tolerance for the skew-symmetry check in floating mode.
pub const SKEW_TOL: f64 = 1e-12;

/// A 2x2 block `[[B_00, B_01], [B_10, B_11]]`.
pub type Block<S> = [[S; 2]; 2];

/// A `2m x 2m` skew-symmetric matrix viewed as an `m x m` array of 2x2 blocks.
///
/// Block `(r, s)` occupies rows `2r, 2r+1` and columns `2s, 2s+1` (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct BlockSkewMatrix<S> {
    m: usize,
    inner: Matrix<S>,
}

/// Largest `|b_kl + b_lk|` over the matrix.
pub fn skew_deviation<S: Scalar>(a: &Matrix<S>) -> f64 {
    let n = a.rows();
    let mut dev = 0.0_f64;
    for k in 0..n {
        for l in k..n {
            dev = dev.max((a[(k, l)].clone() + a[(l, k)].clone()).magnitude());
        }
    }
    dev
}

/// Validates skew-symmetry: exact fields need exact antisymmetry, floats
/// allow `max |b_kl + b_lk| <= SKEW_TOL * max |b|`.
pub fn check_skew<S: Scalar>(a: &Matrix<S>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if S::EXACT {
        for k in 0..n {
            for l in k..n {
                if !(a[(k, l)].clone() + a[(l, k)].clone()).is_zero() {
                    return Err(Error::NotSkewSymmetric {
                        deviation: (a[(k, l)].clone() + a[(l, k)].clone()).magnitude(),
                        tolerance: 0.0,
                    });
                }
            }
        }
        return Ok(());
    }
    let tolerance = SKEW_TOL * a.max_abs();
    let deviation = skew_deviation(a);
    if deviation > tolerance {
        return Err(Error::NotSkewSymmetric { deviation, tolerance });
    }
    Ok(())
}

impl<S: Scalar> BlockSkewMatrix<S> {
    /// Wraps a matrix after validating shape and skew-symmetry.
    pub fn new(matrix: Matrix<S>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if matrix.rows() % 2 != 0 {
            return Err(Error::OddDimension(matrix.rows()));
        }
        check_skew(&matrix)?;
        Ok(Self { m: matrix.rows() / 2, inner: matrix })
    }

    /// `(A - ᵗA) / 2`, always skew.
    pub fn antisymmetrized(matrix: &Matrix<S>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare { rows: matrix.rows(), cols: matrix.cols() });
        }
        if matrix.rows() % 2 != 0 {
            return Err(Error::OddDimension(matrix.rows()));
        }
        let half = S::from_ratio(1, 2);
        let inner = Matrix::from_fn(matrix.rows(), matrix.cols(), |i, j| {
            (matrix[(i, j)].clone() - matrix[(j, i)].clone()) * half.clone()
        });
        Ok(Self { m: matrix.rows() / 2, inner })
    }

    /// Builds from the strict upper triangle `f(k, l)`, `k < l`, of a `2m x 2m` matrix.
    pub fn from_upper(m: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let n = 2 * m;
        let mut inner = Matrix::zeros(n, n);
        for k in 0..n {
            for l in k + 1..n {
                let v = f(k, l);
                inner[(l, k)] = -v.clone();
                inner[(k, l)] = v;
            }
        }
        Self { m, inner }
    }

    /// Builds from blocks; only `r <= s` is queried and the diagonal blocks
    /// contribute their `B_01` entry.
    pub fn from_blocks(m: usize, mut f: impl FnMut(usize, usize) -> Block<S>) -> Self {
        let mut inner = Matrix::zeros(2 * m, 2 * m);
        for r in 0..m {
            for s in r..m {
                let b = f(r, s);
                for i in 0..2 {
                    for j in 0..2 {
                        let (k, l) = (2 * r + i, 2 * s + j);
                        if k < l {
                            inner[(k, l)] = b[i][j].clone();
                            inner[(l, k)] = -b[i][j].clone();
                        }
                    }
                }
            }
        }
        Self { m, inner }
    }

    pub fn zeros(m: usize) -> Self {
        Self { m, inner: Matrix::zeros(2 * m, 2 * m) }
    }

    /// Block size `m` (the matrix is `2m x 2m`).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    pub fn as_matrix(&self) -> &Matrix<S> {
        &self.inner
    }

    pub fn into_matrix(self) -> Matrix<S> {
        self.inner
    }

    /// `b_kl`, 0-based.
    pub fn entry(&self, k: usize, l: usize) -> &S {
        &self.inner[(k, l)]
    }

    /// `B_ij(r, s)`.
    pub fn b(&self, i: usize, j: usize, r: usize, s: usize) -> &S {
        &self.inner[(2 * r + i, 2 * s + j)]
    }

    /// The `(r, s)` block.
    pub fn block(&self, r: usize, s: usize) -> Block<S> {
        [
            [self.b(0, 0, r, s).clone(), self.b(0, 1, r, s).clone()],
            [self.b(1, 0, r, s).clone(), self.b(1, 1, r, s).clone()],
        ]
    }

    /// `B[S]`: block `(p, q)` of the result is `B(s_p, s_q)`; repeated indices allowed.
    pub fn submatrix(&self, seq: &[usize]) -> Result<Self> {
        if let Some(&bad) = seq.iter().find(|&&s| s >= self.m) {
            return Err(Error::IndexOutOfRange { index: bad, bound: self.m });
        }
        let idx: Vec<usize> = seq.iter().flat_map(|&s| [2 * s, 2 * s + 1]).collect();
        Ok(Self { m: seq.len(), inner: self.inner.principal(&idx)? })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { m: self.m, inner: self.inner.add(&other.inner)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self { m: self.m, inner: self.inner.sub(&other.inner)? })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { m: self.m, inner: self.inner.scale(c) }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BlockSkewMatrix<T> {
        BlockSkewMatrix { m: self.m, inner: self.inner.map(f) }
    }

    /// `ᵗT B T`; the result is skew for any square `T` of matching size.
    pub fn congruence(&self, t: &Matrix<S>) -> Result<Self> {
        let inner = t.transpose().mul(&self.inner)?.mul(t)?;
        if inner.rows() % 2 != 0 {
            return Err(Error::OddDimension(inner.rows()));
        }
        Ok(Self { m: inner.rows() / 2, inner })
    }
}

/// `J_m`: block `(r, s)` is `[[0, δ_rs], [-δ_rs, 0]]`.
pub fn make_j<S: Scalar>(m: usize) -> BlockSkewMatrix<S> {
    BlockSkewMatrix::from_upper(m, |k, l| if k % 2 == 0 && l == k + 1 { S::one() } else { S::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewmat::scalar::{C64, QC};

    #[test]
    fn j1_shape() {
        let j = make_j::<QC>(1);
        assert_eq!(j.as_matrix(), &Matrix::from_rows(vec![vec![QC::from_int(0), QC::from_int(1)], vec![QC::from_int(-1), QC::from_int(0)]]).unwrap());
    }

    #[test]
    fn j_squares_to_minus_identity() {
        for m in 1..5 {
            let j = make_j::<QC>(m);
            let sq = j.as_matrix().mul(j.as_matrix()).unwrap();
            assert_eq!(sq, Matrix::identity(2 * m).scale(&QC::from_int(-1)));
        }
    }

    #[test]
    fn rejects_non_skew() {
        let a = Matrix::from_rows(vec![vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)], vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]]).unwrap();
        assert!(matches!(BlockSkewMatrix::new(a.clone()), Err(Error::NotSkewSymmetric { .. })));
        let fixed = BlockSkewMatrix::antisymmetrized(&a).unwrap();
        assert_eq!(fixed.entry(0, 1), &C64::new(0.0, 0.0));
        let odd = Matrix::<C64>::zeros(3, 3);
        assert!(matches!(BlockSkewMatrix::new(odd), Err(Error::OddDimension(3))));
    }

    #[test]
    fn tiny_rounding_is_tolerated() {
        let mut a = Matrix::<C64>::zeros(2, 2);
        a[(0, 1)] = C64::new(1.0, 0.0);
        a[(1, 0)] = C64::new(-1.0 + 1e-14, 0.0);
        assert!(BlockSkewMatrix::new(a).is_ok());
    }

    #[test]
    fn block_accessors_are_skew_consistent() {
        let b = BlockSkewMatrix::<QC>::from_upper(3, |k, l| QC::from_int((k * 7 + l) as i64));
        for r in 0..3 {
            for s in 0..3 {
                for i in 0..2 {
                    for j in 0..2 {
                        assert_eq!(b.b(i, j, r, s).clone(), -b.b(j, i, s, r).clone());
                    }
                }
            }
        }
    }

    #[test]
    fn submatrix_sequences() {
        let b = BlockSkewMatrix::<QC>::from_upper(3, |k, l| QC::from_int((k + 2 * l) as i64));
        assert_eq!(b.submatrix(&[0, 1, 2]).unwrap(), b);
        let swapped = b.submatrix(&[1, 0]).unwrap();
        assert_eq!(swapped.block(0, 1), b.block(1, 0));
        assert!(matches!(b.submatrix(&[3]), Err(Error::IndexOutOfRange { index: 3, bound: 3 })));
        let rep = b.submatrix(&[2, 2]).unwrap();
        assert_eq!(rep.block(0, 1), b.block(2, 2));
    }
}
