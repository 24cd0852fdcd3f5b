//! α-pfaffian point processes on a finite ground set.
//!
//! A [`SkewKernel`] attaches labels to a [`BlockSkewMatrix`] whose block
//! `(x, y)` is `L(x, y)`. For real `α` the density of a sequence is
//! `p(x_1..x_n) = pf(J - αL)^{1/α} pf_α(L[x_1..x_n]) / n!` and the correlation
//! function is `ρ(x) = Σ_k ((n+k)!/k!) Σ_y p(x, y)`.

use std::collections::BTreeMap;

use itertools::Itertools;
use log::warn;
use rayon::prelude::*;

use crate::alphapf::alpha_pf_dp;
use crate::error::{Error, Result};
use crate::permcycle::factorial;
use crate::skewmat::{make_j, powi, BlockSkewMatrix, Matrix, Scalar, C64};

#[derive(Clone, Debug, PartialEq)]
pub struct SkewKernel<S> {
    labels: Vec<String>,
    matrix: BlockSkewMatrix<S>,
}

impl<S: Scalar> SkewKernel<S> {
    pub fn new(labels: Vec<String>, matrix: BlockSkewMatrix<S>) -> Result<Self> {
        if labels.len() != matrix.m() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for a kernel on {} points",
                labels.len(),
                matrix.m()
            )));
        }
        Ok(Self { labels, matrix })
    }

    /// Labels `0, 1, ..`.
    pub fn from_matrix(matrix: BlockSkewMatrix<S>) -> Self {
        Self { labels: (0..matrix.m()).map(|i| i.to_string()).collect(), matrix }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &BlockSkewMatrix<S> {
        &self.matrix
    }

    /// Number of points in the ground set.
    pub fn size(&self) -> usize {
        self.matrix.m()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `L[x_1..x_n]`.
    pub fn restrict(&self, points: &[usize]) -> Result<BlockSkewMatrix<S>> {
        self.matrix.submatrix(points)
    }

    /// Kernel on the listed points, keeping their labels.
    pub fn sub_kernel(&self, points: &[usize]) -> Result<Self> {
        let matrix = self.restrict(points)?;
        Ok(Self { labels: points.iter().map(|&p| self.labels[p].clone()).collect(), matrix })
    }
}

/// A finite multiset of ground-set indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointConfig {
    counts: BTreeMap<usize, usize>,
}

impl PointConfig {
    pub fn from_sequence(seq: &[usize]) -> Self {
        let mut counts = BTreeMap::new();
        for &x in seq {
            *counts.entry(x).or_insert(0) += 1;
        }
        Self { counts }
    }

    pub fn multiplicity(&self, x: usize) -> usize {
        self.counts.get(&x).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Points in increasing order, repeated by multiplicity.
    pub fn sequence(&self) -> Vec<usize> {
        self.counts.iter().flat_map(|(&x, &c)| std::iter::repeat_n(x, c)).collect()
    }

    pub fn support(&self) -> Vec<usize> {
        self.counts.keys().copied().collect()
    }

    /// `∏_x m_x(X)!`.
    pub fn multiplicity_factorial(&self) -> u128 {
        self.counts.values().map(|&c| factorial(c)).product()
    }

    pub fn is_subset(&self) -> bool {
        self.counts.values().all(|&c| c == 1)
    }
}

/// `α` as a real number, or a precondition error.
fn real_alpha<S: Scalar>(alpha: &S) -> Result<f64> {
    let a = alpha.to_c64();
    if a.im != 0.0 {
        return Err(Error::Precondition("point processes need a real α".into()));
    }
    Ok(a.re)
}

/// `Some(p)` when `α = -1/p` for a positive integer `p`.
pub fn negative_reciprocal_integer<S: Scalar>(alpha: &S) -> Option<i64> {
    if alpha.is_zero() {
        return None;
    }
    (S::one() / alpha.clone()).as_integer().filter(|&k| k < 0).map(|k| -k)
}

/// Largest operator norm of a single 2x2 block `L(x, y)`.
pub fn max_block_norm<S: Scalar>(l: &BlockSkewMatrix<S>) -> f64 {
    let mut c = 0.0_f64;
    for x in 0..l.m() {
        for y in 0..l.m() {
            let blk = l.block(x, y);
            let m = Matrix::from_fn(2, 2, |i, j| blk[i][j].to_c64());
            c = c.max(m.operator_norm());
        }
    }
    c
}

/// `pf(J - αL)^{1/α}`.
///
/// Integer exponents (`α = ±1/p`) are exact. Otherwise the principal power is
/// taken only when `pf(J - αL)` lies in the open right half-plane; anything
/// else is reported as a branch error. `α = 0` gives the limit
/// `exp(-Σ_x L_01(x,x))`.
pub fn normalization<S: Scalar>(l: &SkewKernel<S>, alpha: &S) -> Result<S> {
    let a = real_alpha(alpha)?;
    let b = l.matrix();
    if negative_reciprocal_integer(alpha).is_none() {
        let norm = b.as_matrix().to_c64().operator_norm() * a.abs();
        if norm >= 1.0 {
            return Err(Error::Precondition(format!("‖αL‖ = {norm:.6} must be below 1")));
        }
    }
    if a == 0.0 {
        if S::EXACT {
            return Err(Error::ExactUnsupported("normalization at α = 0 (exponential)"));
        }
        let trace = (0..b.m()).fold(C64::new(0.0, 0.0), |acc, x| acc + b.b(0, 1, x, x).to_c64());
        return Ok(S::from_c64((-trace).exp()));
    }
    let base = make_j::<S>(b.m()).sub(&b.scale(alpha))?.pfaffian();
    let exponent = S::one() / alpha.clone();
    if let Some(k) = exponent.as_integer() {
        if k < 0 && base.is_zero() {
            return Err(Error::Singular("pf(J - αL) vanishes".into()));
        }
        return Ok(powi(&base, k));
    }
    let w = base.to_c64();
    if w.re <= 0.0 {
        return Err(Error::Branch(format!("pf(J - αL) = {w} is outside the right half-plane and 1/α = {} is not an integer", 1.0 / a)));
    }
    base.powc(&exponent).ok_or(Error::ExactUnsupported("non-integer power of a pfaffian"))
}

fn warn_if_negative<S: Scalar>(value: &S, what: &str) {
    let v = value.to_c64();
    let scale = v.norm().max(1.0);
    if v.re < -1e-12 * scale || v.im.abs() > 1e-12 * scale {
        warn!("{what} = {v} is not a non-negative real");
    }
}

/// `p(x_1..x_n) = pf(J - αL)^{1/α} pf_α(L[x_1..x_n]) / n!`.
pub fn density<S: Scalar>(l: &SkewKernel<S>, alpha: &S, seq: &[usize]) -> Result<S> {
    let norm = normalization(l, alpha)?;
    density_with(l, alpha, seq, &norm)
}

/// [`density`] with a precomputed normalization.
pub fn density_with<S: Scalar>(l: &SkewKernel<S>, alpha: &S, seq: &[usize], norm: &S) -> Result<S> {
    let w = alpha_pf_dp(&l.restrict(seq)?, alpha)?.value;
    warn_if_negative(&w, "pf_α(L[x])");
    Ok(norm.clone() * w / int_scalar::<S>(factorial(seq.len())))
}

/// `π(X) = pf(J - αL)^{1/α} pf_α(L[X]) / ∏_x m_x(X)!`.
pub fn config_probability<S: Scalar>(l: &SkewKernel<S>, alpha: &S, x: &PointConfig) -> Result<S> {
    let norm = normalization(l, alpha)?;
    let w = alpha_pf_dp(&l.restrict(&x.sequence())?, alpha)?.value;
    warn_if_negative(&w, "pf_α(L[X])");
    Ok(norm * w / int_scalar::<S>(x.multiplicity_factorial()))
}

fn int_scalar<S: Scalar>(n: u128) -> S {
    match i64::try_from(n) {
        Ok(k) => S::from_int(k),
        Err(_) => S::from_c64(C64::new(n as f64, 0.0)),
    }
}

/// Both correlation kernels of a finite α-pfaffian process.
#[derive(Clone, Debug)]
pub struct CorrelationKernels<S> {
    /// `K_α = -α^{-1}(J + (J - αL)^{-1})`; at `α = 0` this is `-J L J`.
    pub k: SkewKernel<S>,
    /// `K̃_α = L (I + αJL)^{-1}`.
    pub k_tilde: SkewKernel<S>,
}

pub fn correlation_kernel<S: Scalar>(l: &SkewKernel<S>, alpha: &S) -> Result<CorrelationKernels<S>> {
    let b = l.matrix();
    let n = b.dim();
    let j = make_j::<S>(b.m());
    let jm = j.as_matrix();
    let resolvent = Matrix::identity(n).add(&jm.mul(b.as_matrix())?.scale(alpha))?;
    let k_tilde = BlockSkewMatrix::antisymmetrized(&b.as_matrix().mul(&resolvent.inverse()?)?)?;
    let k = if alpha.is_zero() {
        jm.mul(k_tilde.as_matrix())?.mul(jm)?.scale(&-S::one())
    } else {
        let inv = jm.sub(&b.as_matrix().scale(alpha))?.inverse()?;
        jm.add(&inv)?.scale(&(-S::one() / alpha.clone()))
    };
    let k = BlockSkewMatrix::antisymmetrized(&k)?;
    Ok(CorrelationKernels {
        k: SkewKernel::new(l.labels().to_vec(), k)?,
        k_tilde: SkewKernel::new(l.labels().to_vec(), k_tilde)?,
    })
}

/// `-J K J`.
pub fn j_conjugate<S: Scalar>(k: &BlockSkewMatrix<S>) -> Result<BlockSkewMatrix<S>> {
    let j = make_j::<S>(k.m());
    let out = j.as_matrix().mul(k.as_matrix())?.mul(j.as_matrix())?.scale(&-S::one());
    BlockSkewMatrix::antisymmetrized(&out)
}

/// A truncated correlation sum with a bound on what was left out.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationEstimate<S> {
    pub value: S,
    /// Upper bound on the modulus of the omitted terms (0 when the sum is finite).
    pub tail_bound: f64,
    /// Largest number of extra points included.
    pub k_max: usize,
}

/// `Σ_{y ∈ 𝔛^k} pf_α(L[x, y]) / k!`, using that `pf_α` is unchanged by
/// simultaneous permutations of the blocks, so each multiset of `y`
/// appears `k!/∏ m_y!` times.
fn extension_term<S: Scalar>(l: &SkewKernel<S>, alpha: &S, points: &[usize], k: usize) -> Result<S> {
    let mut total = S::zero();
    for ext in (0..l.size()).combinations_with_replacement(k) {
        let mult = PointConfig::from_sequence(&ext).multiplicity_factorial();
        let seq: Vec<usize> = points.iter().copied().chain(ext).collect();
        let w = alpha_pf_dp(&l.restrict(&seq)?, alpha)?.value;
        total = total + w / int_scalar::<S>(mult);
    }
    Ok(total)
}

/// Bound on `Σ_{k > k_max} |Σ_y pf_α(L[x,y])| / k!`.
///
/// With `c` the largest 2x2 block norm, every cycle weight obeys
/// `|Q(τ)| <= c^{|τ|}`, so `|pf_α(B)| <= c^m ∏_{j<m} (1 + |α| j)` and the
/// k-th term is at most `T_k = N^k c^{n+k} ∏_{j<n+k}(1 + |α| j) / k!`. The
/// ratio `T_{k+1}/T_k` is monotone in `k`, so the tail is geometric.
pub fn correlation_tail_bound(size: usize, n: usize, c: f64, alpha: f64, k_max: usize) -> Result<f64> {
    let a = alpha.abs();
    let big_n = size as f64;
    let ratio = |k: usize| big_n * c * (1.0 + a * (n + k) as f64) / (k as f64 + 1.0);
    let first = k_max + 1;
    let mut t = c.powi(n as i32) * (0..n).map(|j| 1.0 + a * j as f64).product::<f64>();
    for k in 0..first {
        t *= ratio(k);
    }
    let q = ratio(first).max(big_n * c * a);
    if q >= 1.0 {
        return Err(Error::NonConvergent(format!("term ratio bound {q:.4} is not below 1")));
    }
    Ok(t / (1.0 - q))
}

/// `ρ(x_1..x_n)` by direct summation over extensions with up to `k_max`
/// extra points. At `α = -1` the sum is finite (repeated points give a zero
/// pfaffian) and exact; otherwise the returned bound covers the remainder.
/// Terms for different `k` are computed in parallel and added in order.
pub fn correlation_bruteforce<S: Scalar>(
    l: &SkewKernel<S>,
    alpha: &S,
    points: &[usize],
    k_max: usize,
) -> Result<CorrelationEstimate<S>> {
    let a = real_alpha(alpha)?;
    let norm = normalization(l, alpha)?;
    let n = points.len();
    let minus_one = (alpha.clone() + S::one()).is_zero();
    let distinct = points.iter().all_unique();
    if minus_one {
        if !distinct {
            return Ok(CorrelationEstimate { value: S::zero(), tail_bound: 0.0, k_max: 0 });
        }
        let value = pfaffian_correlation_subsets(l, points)?;
        return Ok(CorrelationEstimate { value, tail_bound: 0.0, k_max: l.size() - n });
    }
    let terms: Vec<S> = (0..=k_max)
        .into_par_iter()
        .map(|k| extension_term(l, alpha, points, k))
        .collect::<Result<Vec<S>>>()?;
    let sum = terms.into_iter().fold(S::zero(), |acc, t| acc + t);
    let tail = correlation_tail_bound(l.size(), n, max_block_norm(l.matrix()), a, k_max)?;
    Ok(CorrelationEstimate { value: norm.clone() * sum, tail_bound: tail * norm.magnitude(), k_max })
}

/// `ρ(X) = Σ_{Y ⊇ X} pf(L[Y]) / pf(J + L)` for the pfaffian process (`α = -1`), `Y` in ground-set order.
pub fn pfaffian_correlation_subsets<S: Scalar>(l: &SkewKernel<S>, points: &[usize]) -> Result<S> {
    let b = l.matrix();
    let total = make_j::<S>(b.m()).add(b)?.pfaffian();
    if total.is_zero() {
        return Err(Error::Singular("pf(J + L) vanishes".into()));
    }
    let fixed: u64 = points.iter().try_fold(0u64, |acc, &p| {
        if p >= b.m() {
            Err(Error::IndexOutOfRange { index: p, bound: b.m() })
        } else {
            Ok(acc | 1 << p)
        }
    })?;
    let mut acc = S::zero();
    for mask in 0u64..(1 << b.m()) {
        if mask & fixed != fixed {
            continue;
        }
        let ys: Vec<usize> = (0..b.m()).filter(|&i| mask >> i & 1 == 1).collect();
        acc = acc + b.submatrix(&ys)?.pfaffian();
    }
    Ok(acc / total)
}

/// Total mass `Σ_n Σ_{x ∈ 𝔛^n} p(x)` through `n_max` points, with a tail bound.
pub fn total_mass<S: Scalar>(l: &SkewKernel<S>, alpha: &S, n_max: usize) -> Result<CorrelationEstimate<S>> {
    correlation_bruteforce(l, alpha, &[], n_max)
}

fn complement_mask(size: usize, complement: &[usize]) -> Result<Vec<bool>> {
    let mut in_y = vec![true; size];
    for &c in complement {
        if c >= size {
            return Err(Error::IndexOutOfRange { index: c, bound: size });
        }
        in_y[c] = false;
    }
    Ok(in_y)
}

/// `J[𝔜] + L`, with `J[𝔜]` the `J` kernel on `𝔜` and zero on `𝔜^c`.
pub fn conditioned_matrix<S: Scalar>(l: &SkewKernel<S>, complement: &[usize]) -> Result<BlockSkewMatrix<S>> {
    let in_y = complement_mask(l.size(), complement)?;
    let jy = BlockSkewMatrix::from_blocks(l.size(), |r, s| {
        let one = if r == s && in_y[r] { S::one() } else { S::zero() };
        [[S::zero(), one], [S::zero(), S::zero()]]
    });
    jy.add(l.matrix())
}

/// Correlation kernel of the conditional pfaffian process on `𝔜 = 𝔛 \ complement`:
/// `K = J[𝔜] + (J[𝔜] + L)^{-1}` restricted to `𝔜 x 𝔜`.
pub fn conditional_kernel<S: Scalar>(l: &SkewKernel<S>, complement: &[usize]) -> Result<SkewKernel<S>> {
    let in_y = complement_mask(l.size(), complement)?;
    let inv = conditioned_matrix(l, complement)?.as_matrix().inverse()?;
    let ys: Vec<usize> = (0..l.size()).filter(|&i| in_y[i]).collect();
    let idx: Vec<usize> = ys.iter().flat_map(|&y| [2 * y, 2 * y + 1]).collect();
    let restricted = BlockSkewMatrix::antisymmetrized(&inv.principal(&idx)?)?;
    let k = make_j::<S>(ys.len()).add(&restricted)?;
    SkewKernel::new(ys.iter().map(|&y| l.labels()[y].clone()).collect(), k)
}

/// `π_{L,𝔜}(X) = pf(L[X ∪ 𝔜^c]) / pf(J[𝔜] + L)` for `X ⊆ 𝔜` (ground-set indices).
pub fn cppp_density<S: Scalar>(l: &SkewKernel<S>, complement: &[usize], x: &[usize]) -> Result<S> {
    let in_y = complement_mask(l.size(), complement)?;
    if let Some(&bad) = x.iter().find(|&&p| p >= l.size() || !in_y[p]) {
        return Err(Error::Precondition(format!("point {bad} is not in 𝔜")));
    }
    let denom = conditioned_matrix(l, complement)?.pfaffian();
    if denom.is_zero() {
        return Err(Error::Singular("pf(J[𝔜] + L) vanishes".into()));
    }
    let mut union: Vec<usize> = x.iter().chain(complement).copied().collect();
    union.sort_unstable();
    if !union.iter().all_unique() {
        return Ok(S::zero());
    }
    Ok(l.restrict(&union)?.pfaffian() / denom)
}

/// `ρ_{L,𝔜}(X) = Σ_{X ⊆ Z ⊆ 𝔜} π_{L,𝔜}(Z)` by full enumeration.
pub fn cppp_correlation_bruteforce<S: Scalar>(l: &SkewKernel<S>, complement: &[usize], x: &[usize]) -> Result<S> {
    let in_y = complement_mask(l.size(), complement)?;
    let ys: Vec<usize> = (0..l.size()).filter(|&i| in_y[i]).collect();
    let mut total = S::zero();
    for mask in 0u64..(1 << ys.len()) {
        let z: Vec<usize> = (0..ys.len()).filter(|&i| mask >> i & 1 == 1).map(|i| ys[i]).collect();
        if x.iter().all(|p| z.contains(p)) {
            total = total + cppp_density(l, complement, &z)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::{random_skew, rng};
    use crate::skewmat::{rel_err, QC};

    fn small_kernel(m: usize, seed: u64, scale: f64) -> SkewKernel<C64> {
        let b: BlockSkewMatrix<C64> = random_skew(m, &mut rng(seed));
        SkewKernel::from_matrix(b.scale(&C64::new(scale, 0.0)))
    }

    #[test]
    fn zero_kernel() {
        let l = SkewKernel::from_matrix(BlockSkewMatrix::<QC>::zeros(3));
        assert_eq!(normalization(&l, &QC::from_ratio(-1, 2)).unwrap(), QC::from_int(1));
        let ks = correlation_kernel(&l, &QC::from_ratio(1, 3)).unwrap();
        assert_eq!(ks.k.matrix(), &BlockSkewMatrix::zeros(3));
        assert_eq!(density(&l, &QC::from_int(-1), &[]).unwrap(), QC::from_int(1));
    }

    #[test]
    fn pfaffian_process_sums_to_one() {
        let b: BlockSkewMatrix<QC> = random_skew(2, &mut rng(4));
        let l = SkewKernel::from_matrix(b);
        let minus_one = QC::from_int(-1);
        let total = [vec![], vec![0], vec![1], vec![0, 1]]
            .iter()
            .map(|x| config_probability(&l, &minus_one, &PointConfig::from_sequence(x)).unwrap())
            .fold(QC::from_int(0), |a, b| a + b);
        assert_eq!(total, QC::from_int(1));
        assert_eq!(density(&l, &minus_one, &[1, 1]).unwrap(), QC::from_int(0));
    }

    #[test]
    fn kernels_are_j_conjugate() {
        let b: BlockSkewMatrix<QC> = random_skew(3, &mut rng(5));
        let l = SkewKernel::from_matrix(b);
        for a in [QC::from_ratio(-1, 2), QC::from_ratio(2, 5), QC::from_int(0)] {
            let ks = correlation_kernel(&l, &a).unwrap();
            assert_eq!(&j_conjugate(ks.k_tilde.matrix()).unwrap(), ks.k.matrix());
        }
    }

    #[test]
    fn minus_one_correlation_matches_pfaffian_kernel() {
        let b: BlockSkewMatrix<QC> = random_skew(3, &mut rng(6));
        let l = SkewKernel::from_matrix(b);
        let ks = correlation_kernel(&l, &QC::from_int(-1)).unwrap();
        for x in [vec![0], vec![2, 0], vec![0, 1, 2]] {
            let rho = correlation_bruteforce(&l, &QC::from_int(-1), &x, 0).unwrap();
            assert_eq!(rho.tail_bound, 0.0);
            assert_eq!(rho.value, ks.k.restrict(&x).unwrap().pfaffian());
        }
    }

    #[test]
    fn half_alpha_correlation_within_tail() {
        let l = small_kernel(2, 7, 0.08);
        let a = C64::new(-0.5, 0.0);
        let ks = correlation_kernel(&l, &a).unwrap();
        for x in [vec![], vec![0], vec![1, 0]] {
            let est = correlation_bruteforce(&l, &a, &x, 10).unwrap();
            let exact = alpha_pf_dp(&ks.k.restrict(&x).unwrap(), &a).unwrap().value;
            assert!((est.value - exact).norm() <= est.tail_bound + 1e-8, "{x:?}: {} vs {exact}", est.value);
            assert!(est.tail_bound < 1e-6);
        }
    }

    #[test]
    fn branch_and_precondition_errors() {
        let l = small_kernel(2, 8, 3.0);
        assert!(matches!(normalization(&l, &C64::new(0.5, 0.0)), Err(Error::Precondition(_))));
        assert!(matches!(normalization(&l, &C64::new(-0.5, 0.1)), Err(Error::Precondition(_))));
        // block-diagonal L with pf(J - αL) = w^2, arg w = 1, |αL| < 1
        let alpha = 0.4;
        let w = C64::from_polar(0.6, 1.0);
        let c = (C64::new(1.0, 0.0) - w) / alpha;
        let b = BlockSkewMatrix::<C64>::from_upper(2, |k, l| if l == k + 1 && k % 2 == 0 { c } else { C64::new(0.0, 0.0) });
        let res = normalization(&SkewKernel::from_matrix(b), &C64::new(alpha, 0.0));
        assert!(matches!(res, Err(Error::Branch(_))), "{res:?}");
    }

    #[test]
    fn conditional_with_empty_complement() {
        let b: BlockSkewMatrix<QC> = random_skew(3, &mut rng(9));
        let l = SkewKernel::from_matrix(b);
        let k = conditional_kernel(&l, &[]).unwrap();
        let ks = correlation_kernel(&l, &QC::from_int(-1)).unwrap();
        assert_eq!(k.matrix(), ks.k.matrix());
    }

    #[test]
    fn conditional_enumeration() {
        let b: BlockSkewMatrix<QC> = random_skew(4, &mut rng(10));
        let l = SkewKernel::from_matrix(b);
        let k = conditional_kernel(&l, &[2]).unwrap();
        assert_eq!(k.labels(), &["0", "1", "3"]);
        for x in [vec![], vec![0], vec![3], vec![0, 1, 3]] {
            let pos: Vec<usize> = x.iter().map(|p| if *p > 2 { p - 1 } else { *p }).collect();
            assert_eq!(cppp_correlation_bruteforce(&l, &[2], &x).unwrap(), k.restrict(&pos).unwrap().pfaffian());
        }
    }

    #[test]
    fn float_total_mass() {
        let l = small_kernel(2, 11, 0.1);
        let a = C64::new(0.5, 0.0);
        let est = total_mass(&l, &a, 12).unwrap();
        assert!(rel_err(&est.value, &C64::new(1.0, 0.0)) <= est.tail_bound + 1e-10);
    }
}
