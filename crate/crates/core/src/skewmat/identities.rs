//! Pfaffian summation lemmas: the addition formula, the minor summation
//! formula and the bordered-pfaffian reduction.

use itertools::Itertools;

use super::block::{check_skew, make_j, BlockSkewMatrix};
use super::matrix::Matrix;
use super::pfaffian::pfaffian;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Largest dimension accepted by [`pf_addition`] (it visits `2^n` subsets).
pub const ADDITION_MAX_DIM: usize = 20;

/// `pf(A + B)` as the signed sum `Σ_i (-1)^{|i| + #i/2} pf(A_i) pf(B_{i^c})`
/// over even-size index subsets `i`, with `|i|` the 1-based index sum.
pub fn pf_addition<S: Scalar>(a: &BlockSkewMatrix<S>, b: &BlockSkewMatrix<S>) -> Result<S> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch(format!("pf_addition: {n}x{n} vs {0}x{0}", b.dim())));
    }
    if n > ADDITION_MAX_DIM {
        return Err(Error::TooLarge { what: "pf_addition dimension", size: n, limit: ADDITION_MAX_DIM });
    }
    let (am, bm) = (a.as_matrix(), b.as_matrix());
    let mut total = S::zero();
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size % 2 == 1 {
            continue;
        }
        let (inside, outside): (Vec<usize>, Vec<usize>) = (0..n).partition(|&k| mask >> k & 1 == 1);
        let pa = pfaffian(&am.principal(&inside)?)?;
        if pa.is_zero() {
            continue;
        }
        let pb = pfaffian(&bm.principal(&outside)?)?;
        let index_sum: usize = inside.iter().map(|&k| k + 1).sum();
        let term = pa * pb;
        total = if (index_sum + size / 2) % 2 == 0 { total + term } else { total - term };
    }
    Ok(total)
}

/// Left-hand side of the minor summation formula,
/// `Σ_{#i = m} pf(B_i) det(T^{1..m}_i)`, evaluated term by term.
/// The formula equates it with `pf(T B ᵗT)`.
pub fn minor_summation<S: Scalar>(b: &Matrix<S>, t: &Matrix<S>) -> Result<S> {
    check_skew(b)?;
    let (m, n) = (t.rows(), t.cols());
    if b.rows() != n {
        return Err(Error::DimensionMismatch(format!("T has {n} columns but B is {0}x{0}", b.rows())));
    }
    if m % 2 == 1 {
        return Err(Error::OddDimension(m));
    }
    if m > n {
        return Err(Error::DimensionMismatch(format!("minor summation needs m <= n, got m = {m}, n = {n}")));
    }
    let rows: Vec<usize> = (0..m).collect();
    let mut total = S::zero();
    for idx in (0..n).combinations(m) {
        let p = pfaffian(&b.principal(&idx)?)?;
        if p.is_zero() {
            continue;
        }
        total = total + p * t.select(&rows, &idx)?.det()?;
    }
    Ok(total)
}

/// The bordered matrix `[[A, B], [-ᵗB, J_m]]` for `A` skew `2n x 2n` and `B` of size `2n x 2m`.
pub fn bordered_matrix<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<BlockSkewMatrix<S>> {
    check_skew(a)?;
    if b.rows() != a.rows() || b.cols() % 2 == 1 {
        return Err(Error::DimensionMismatch(format!(
            "bordered pfaffian needs B of size {}x(2m), got {}x{}",
            a.rows(),
            b.rows(),
            b.cols()
        )));
    }
    let j = make_j::<S>(b.cols() / 2).into_matrix();
    let full = Matrix::block2x2(a, b, &b.transpose().scale(&-S::one()), &j)?;
    BlockSkewMatrix::new(full)
}

/// `pf(B J_m ᵗB - A)`, which equals the pfaffian of [`bordered_matrix`]
/// when `A` is `2n x 2n` with `n` even.
pub fn bordered_pf<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<S> {
    check_skew(a)?;
    if a.rows() % 2 == 1 {
        return Err(Error::OddDimension(a.rows()));
    }
    let n = a.rows() / 2;
    if n % 2 == 1 {
        return Err(Error::Precondition(format!("bordered pfaffian reduction needs n even, got n = {n}")));
    }
    if b.rows() != a.rows() || b.cols() % 2 == 1 {
        return Err(Error::DimensionMismatch(format!(
            "bordered pfaffian needs B of size {}x(2m), got {}x{}",
            a.rows(),
            b.rows(),
            b.cols()
        )));
    }
    let j = make_j::<S>(b.cols() / 2).into_matrix();
    let inner = b.mul(&j)?.mul(&b.transpose())?.sub(a)?;
    pfaffian(&inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{random_matrix, random_skew, random_skew_any, rng};
    use crate::skewmat::scalar::{rel_err, C64, QC};

    #[test]
    fn addition_with_a_zero_summand() {
        let a: BlockSkewMatrix<QC> = random_skew(3, &mut rng(1));
        let z = BlockSkewMatrix::<QC>::zeros(3);
        assert_eq!(pf_addition(&a, &z).unwrap(), a.pfaffian());
        assert_eq!(pf_addition(&z, &a).unwrap(), a.pfaffian());
    }

    #[test]
    fn addition_matches_elimination() {
        let mut r = rng(2);
        for _ in 0..5 {
            let a: BlockSkewMatrix<C64> = random_skew(3, &mut r);
            let b: BlockSkewMatrix<C64> = random_skew(3, &mut r);
            let direct = a.add(&b).unwrap().pfaffian_elim();
            assert!(rel_err(&pf_addition(&a, &b).unwrap(), &direct) < 1e-9);
        }
        let a: BlockSkewMatrix<QC> = random_skew(2, &mut r);
        let b: BlockSkewMatrix<QC> = random_skew(2, &mut r);
        assert_eq!(pf_addition(&a, &b).unwrap(), a.add(&b).unwrap().pfaffian());
    }

    #[test]
    fn minor_summation_identity_and_trivial_case() {
        let mut r = rng(3);
        let b: Matrix<QC> = random_skew_any(6, &mut r);
        let t: Matrix<QC> = random_matrix(4, 6, &mut r);
        let rhs = pfaffian(&t.mul(&b).unwrap().mul(&t.transpose()).unwrap()).unwrap();
        assert_eq!(minor_summation(&b, &t).unwrap(), rhs);
        let square: Matrix<QC> = random_skew_any(4, &mut r);
        assert_eq!(minor_summation(&square, &Matrix::identity(4)).unwrap(), pfaffian(&square).unwrap());
    }

    #[test]
    fn minor_summation_rejects_odd_m() {
        let b: Matrix<QC> = random_skew_any(4, &mut rng(4));
        let t: Matrix<QC> = random_matrix(3, 4, &mut rng(5));
        assert!(matches!(minor_summation(&b, &t), Err(Error::OddDimension(3))));
    }

    #[test]
    fn bordered_reduction() {
        let mut r = rng(6);
        let a: Matrix<QC> = random_skew_any(4, &mut r);
        let b: Matrix<QC> = random_matrix(4, 4, &mut r);
        let lhs = bordered_matrix(&a, &b).unwrap().pfaffian();
        assert_eq!(bordered_pf(&a, &b).unwrap(), lhs);
        // B = 0 leaves pf(-A) = pf(A) because n = 2 is even
        let zero = Matrix::<QC>::zeros(4, 4);
        assert_eq!(bordered_pf(&a, &zero).unwrap(), pfaffian(&a).unwrap());
        let odd: Matrix<QC> = random_skew_any(2, &mut r);
        assert!(bordered_pf(&odd, &Matrix::zeros(2, 2)).is_err());
    }
}
