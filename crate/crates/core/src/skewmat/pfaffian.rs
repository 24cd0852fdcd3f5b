//! Classical pfaffians and α-determinants.

use super::block::{check_skew, BlockSkewMatrix};
use super::matrix::Matrix;
use super::scalar::{powi, Scalar};
use crate::error::{Error, Result};

/// Dimension up to which [`pfaffian`] uses the matching sum.
pub const MATCHING_SUM_MAX_DIM: usize = 10;

fn require_even_skew<S: Scalar>(a: &Matrix<S>) -> Result<usize> {
    check_skew(a)?;
    let n = a.rows();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    Ok(n)
}

/// Signed sum over perfect matchings. `pf(∅) = 1`.
pub fn pfaffian_sum<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    let n = require_even_skew(a)?;
    let mut idx: Vec<usize> = (0..n).collect();
    Ok(matching_sum(a, &mut idx))
}

fn matching_sum<S: Scalar>(a: &Matrix<S>, idx: &mut Vec<usize>) -> S {
    if idx.is_empty() {
        return S::one();
    }
    let first = idx[0];
    let mut total = S::zero();
    for pos in 1..idx.len() {
        let partner = idx[pos];
        let weight = &a[(first, partner)];
        if weight.is_zero() {
            continue;
        }
        let mut rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != partner).collect();
        let sub = matching_sum(a, &mut rest);
        let term = weight.clone() * sub;
        total = if pos % 2 == 1 { total + term } else { total - term };
    }
    total
}

/// Pfaffian by skew-symmetric Gaussian elimination (2x2 Schur complements
/// with row/column interchanges), `O(n^3)`.
pub fn pfaffian_elim<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    let n = require_even_skew(a)?;
    let mut w = a.clone();
    let mut pf = S::one();
    for k in (0..n).step_by(2) {
        let pivot = if S::EXACT {
            (k + 1..n).find(|&j| !w[(k, j)].is_zero())
        } else {
            let (j, mag) = (k + 1..n)
                .map(|j| (j, w[(k, j)].magnitude()))
                .fold((k + 1, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            (mag > 0.0).then_some(j)
        };
        let Some(p) = pivot else {
            return Ok(S::zero());
        };
        if p != k + 1 {
            // simultaneous row/column interchange flips the sign
            for c in 0..n {
                let tmp = w[(k + 1, c)].clone();
                w[(k + 1, c)] = w[(p, c)].clone();
                w[(p, c)] = tmp;
            }
            for r in 0..n {
                let tmp = w[(r, k + 1)].clone();
                w[(r, k + 1)] = w[(r, p)].clone();
                w[(r, p)] = tmp;
            }
            pf = -pf;
        }
        let c = w[(k, k + 1)].clone();
        pf = pf * c.clone();
        for i in k + 2..n {
            for j in i + 1..n {
                let upd = (w[(k + 1, i)].clone() * w[(k, j)].clone()
                    - w[(k, i)].clone() * w[(k + 1, j)].clone())
                    / c.clone();
                let v = w[(i, j)].clone() + upd;
                w[(j, i)] = -v.clone();
                w[(i, j)] = v;
            }
        }
    }
    Ok(pf)
}

/// Pfaffian with automatic dispatch: matching sum up to dimension 10, elimination above.
pub fn pfaffian<S: Scalar>(a: &Matrix<S>) -> Result<S> {
    if a.rows() <= MATCHING_SUM_MAX_DIM {
        pfaffian_sum(a)
    } else {
        pfaffian_elim(a)
    }
}

impl<S: Scalar> BlockSkewMatrix<S> {
    pub fn pfaffian(&self) -> S {
        pfaffian(self.as_matrix()).expect("validated skew matrix")
    }

    pub fn pfaffian_sum(&self) -> S {
        pfaffian_sum(self.as_matrix()).expect("validated skew matrix")
    }

    pub fn pfaffian_elim(&self) -> S {
        pfaffian_elim(self.as_matrix()).expect("validated skew matrix")
    }
}

/// α-determinant `Σ_σ α^{n - ν(σ)} ∏ a_{i σ(i)}`, by depth-first enumeration of `S_n`
/// with zero-entry pruning.
pub fn alpha_det<S: Scalar>(a: &Matrix<S>, alpha: &S) -> Result<S> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    // Entries reached with the same number of cycles share a power of α,
    // so accumulate per cycle count and combine at the end.
    let mut by_cycles = vec![S::zero(); n + 1];
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    dfs_alpha_det(a, 0, S::one(), &mut image, &mut used, &mut by_cycles);
    Ok(by_cycles
        .into_iter()
        .enumerate()
        .fold(S::zero(), |acc, (nu, c)| if c.is_zero() { acc } else { acc + c * powi(alpha, (n - nu) as i64) }))
}

fn dfs_alpha_det<S: Scalar>(
    a: &Matrix<S>,
    row: usize,
    prod: S,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    by_cycles: &mut Vec<S>,
) {
    let n = a.rows();
    if row == n {
        let nu = count_cycles(image);
        by_cycles[nu] = by_cycles[nu].clone() + prod;
        return;
    }
    for col in 0..n {
        if used[col] || a[(row, col)].is_zero() {
            continue;
        }
        used[col] = true;
        image[row] = col;
        dfs_alpha_det(a, row + 1, prod.clone() * a[(row, col)].clone(), image, used, by_cycles);
        used[col] = false;
    }
}

fn count_cycles(image: &[usize]) -> usize {
    let mut seen = vec![false; image.len()];
    let mut count = 0;
    for s in 0..image.len() {
        if !seen[s] {
            count += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = image[x];
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewmat::block::make_j;
    use crate::skewmat::scalar::{rel_err, C64, QC};
    use crate::ensemble::{random_matrix, random_skew, rng};

    #[test]
    fn two_by_two() {
        let b = BlockSkewMatrix::<QC>::from_upper(1, |_, _| QC::from_ratio(5, 3));
        assert_eq!(b.pfaffian_sum(), QC::from_ratio(5, 3));
        assert_eq!(b.pfaffian_elim(), QC::from_ratio(5, 3));
    }

    #[test]
    fn four_by_four_formula() {
        let b: BlockSkewMatrix<QC> = random_skew(2, &mut rng(3));
        let e = |k: usize, l: usize| b.entry(k - 1, l - 1).clone();
        let expected = e(1, 2) * e(3, 4) - e(1, 3) * e(2, 4) + e(1, 4) * e(2, 3);
        assert_eq!(b.pfaffian_sum(), expected);
        assert_eq!(b.pfaffian_elim(), expected);
    }

    #[test]
    fn pfaffian_of_j_is_one() {
        for m in 0..=6 {
            assert_eq!(make_j::<QC>(m).pfaffian_sum(), QC::from_int(1));
            assert_eq!(make_j::<QC>(m).pfaffian_elim(), QC::from_int(1));
            assert_eq!(make_j::<QC>(m).as_matrix().det().unwrap(), QC::from_int(1));
        }
    }

    #[test]
    fn zero_matrix_and_empty() {
        assert_eq!(BlockSkewMatrix::<C64>::zeros(3).pfaffian_elim(), C64::new(0.0, 0.0));
        assert_eq!(BlockSkewMatrix::<QC>::zeros(0).pfaffian_sum(), QC::from_int(1));
    }

    #[test]
    fn square_equals_determinant_exact() {
        let mut r = rng(11);
        for m in 1..=3 {
            let b: BlockSkewMatrix<QC> = random_skew(m, &mut r);
            let pf = b.pfaffian_sum();
            assert_eq!(pf.clone() * pf, b.as_matrix().det().unwrap());
        }
    }

    #[test]
    fn elimination_matches_matching_sum() {
        let mut r = rng(5);
        for _ in 0..50 {
            let b: BlockSkewMatrix<C64> = random_skew(4, &mut r);
            assert!(rel_err(&b.pfaffian_sum(), &b.pfaffian_elim()) < 1e-10);
        }
    }

    #[test]
    fn rejects_odd_and_non_skew() {
        let odd = Matrix::<QC>::zeros(3, 3);
        assert!(matches!(pfaffian_sum(&odd), Err(Error::OddDimension(3))));
        let mut ns = Matrix::<QC>::zeros(2, 2);
        ns[(0, 1)] = QC::from_int(1);
        assert!(matches!(pfaffian_elim(&ns), Err(Error::NotSkewSymmetric { .. })));
    }

    #[test]
    fn alpha_det_two_by_two() {
        let a = Matrix::from_rows(vec![
            vec![QC::from_int(2), QC::from_int(3)],
            vec![QC::from_int(5), QC::from_int(7)],
        ])
        .unwrap();
        let alpha = QC::from_ratio(1, 3);
        // ad + α bc
        assert_eq!(alpha_det(&a, &alpha).unwrap(), QC::from_int(14) + alpha * QC::from_int(15));
    }

    #[test]
    fn alpha_det_specializations() {
        let ones = Matrix::from_fn(3, 3, |_, _| QC::from_int(1));
        assert_eq!(alpha_det(&ones, &QC::from_int(1)).unwrap(), QC::from_int(6));
        let a: Matrix<C64> = random_matrix(5, 5, &mut rng(21));
        let d = alpha_det(&a, &C64::new(-1.0, 0.0)).unwrap();
        assert!(rel_err(&d, &a.det().unwrap()) < 1e-10);
    }
}
