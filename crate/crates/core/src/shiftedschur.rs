//! Schur Q-functions, the shifted Schur measure and its correlation kernel.
//!
//! The measure on strict partitions is `P(λ) = 2^{-ℓ(λ)} Q_λ(u) Q_λ(v) / Z` with
//! `Z = ∏_{i,j} (1 + u_i v_j)/(1 - u_i v_j)`. Its correlation function
//! `ρ(λ) = P({μ ⊇ λ})` is the pfaffian of a 2x2-block kernel, available here
//! from the closed form of `M^{-1}` ([`MatrixKernel`]) and by coefficient
//! extraction from bivariate Laurent series ([`SeriesKernel`]).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pointproc::SkewKernel;
use crate::series::{q_gen, q_gen_reciprocal, TruncatedSeries1, TruncatedSeries2};
use crate::skewmat::{pfaffian, powi, Block, BlockSkewMatrix, Matrix, Scalar, C64, QC};

/// Extra series order required beyond `r + s` by [`SeriesKernel`].
pub const GUARD_BAND: usize = 8;

const COINCIDENCE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrictPartition {
    parts: Vec<usize>,
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not strictly decreasing")));
        }
        Ok(Self { parts })
    }

    /// Sorts distinct positive parts into decreasing order.
    pub fn from_parts(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part-set inclusion `self ⊇ other`.
    pub fn contains(&self, other: &StrictPartition) -> bool {
        other.parts.iter().all(|p| self.parts.contains(p))
    }

    /// All strict partitions of weight exactly `w` with at most `max_len` parts, in reverse lexicographic order.
    pub fn of_weight(w: usize, max_len: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        strict_rec(w, w, max_len, &mut cur, &mut out);
        out
    }

    /// All strict partitions of weight at most `w` with at most `max_len` parts, by weight.
    pub fn up_to(w: usize, max_len: usize) -> Vec<Self> {
        (0..=w).flat_map(|k| Self::of_weight(k, max_len)).collect()
    }
}

fn strict_rec(rest: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<StrictPartition>) {
    if rest == 0 {
        out.push(StrictPartition { parts: cur.clone() });
        return;
    }
    if cur.len() == max_len {
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        cur.push(p);
        strict_rec(rest - p, p - 1, max_len, cur, out);
        cur.pop();
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `φ(λ)`: the parts, followed by `0` when `ℓ(λ)` is odd.
pub fn phi_map(lambda: &StrictPartition) -> Vec<usize> {
    let mut x = lambda.parts.clone();
    if x.len() % 2 == 1 {
        x.push(0);
    }
    x
}

fn check_variables<S: Scalar>(u: &[S], name: &str) -> Result<()> {
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if (u[i].clone() - u[j].clone()).is_negligible(COINCIDENCE_TOL) {
                return Err(Error::DegenerateParameters(format!("{name}_{} = {name}_{}", i + 1, j + 1)));
            }
            if (u[i].clone() + u[j].clone()).is_negligible(COINCIDENCE_TOL) {
                return Err(Error::DegenerateParameters(format!("{name}_{} = -{name}_{}", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// `(x - y)/(x + y)`, with the skew diagonal convention `0` when `i = j`.
fn ratio<S: Scalar>(x: &[S], i: usize, j: usize) -> S {
    if i == j {
        S::zero()
    } else {
        (x[i].clone() - x[j].clone()) / (x[i].clone() + x[j].clone())
    }
}

/// `∏_{i<j} (x_i - x_j)/(x_i + x_j)`.
pub fn ratio_product<S: Scalar>(x: &[S]) -> S {
    let mut p = S::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            p = p * ratio(x, i, j);
        }
    }
    p
}

/// `A_u(X) = [[V(u), W(u)_X], [-ᵗW(u)_X, 0]]`.
pub fn nimmo_matrix<S: Scalar>(u: &[S], x: &[usize]) -> Matrix<S> {
    let n = u.len();
    Matrix::from_fn(n + x.len(), n + x.len(), |i, j| match (i < n, j < n) {
        (true, true) => ratio(u, i, j),
        (true, false) => powi(&u[i], x[j - n] as i64),
        (false, true) => -powi(&u[j], x[i - n] as i64),
        (false, false) => S::zero(),
    })
}

fn unsigned_nimmo<S: Scalar>(lambda: &StrictPartition, u: &[S]) -> Result<S> {
    let a = nimmo_matrix(u, &phi_map(lambda));
    let pf = pfaffian(&a)?;
    Ok(powi(&S::from_int(2), lambda.len() as i64) * pf / ratio_product(u))
}

fn nimmo_sign(lambda: &StrictPartition, n: usize) -> Result<bool> {
    static SIGNS: OnceLock<Mutex<HashMap<(Vec<usize>, usize), bool>>> = OnceLock::new();
    let cache = SIGNS.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (lambda.parts.clone(), n);
    if let Some(&neg) = cache.lock().expect("sign cache").get(&key) {
        return Ok(neg);
    }
    // Q_λ has non-negative monomial coefficients, so it is positive at
    // distinct positive reals whenever ℓ(λ) <= n.
    let reference: Vec<QC> = (0..n).map(|i| QC::from_ratio(1, i as i64 + 2)).collect();
    let raw = unsigned_nimmo(lambda, &reference)?.to_c64();
    if raw.re == 0.0 {
        return Err(Error::Precondition(format!("Q_{lambda} vanishes at the reference point")));
    }
    let neg = raw.re < 0.0;
    cache.lock().expect("sign cache").insert(key, neg);
    Ok(neg)
}

/// `Q_λ(u)` by Nimmo's pfaffian formula. An odd number of variables is
/// padded with a zero; `ℓ(λ) > n` gives `0`.
pub fn schur_q<S: Scalar>(lambda: &StrictPartition, u: &[S]) -> Result<S> {
    if lambda.is_empty() {
        return Ok(S::one());
    }
    let mut vars = u.to_vec();
    if vars.len() % 2 == 1 {
        vars.push(S::zero());
    }
    check_variables(&vars, "u")?;
    if lambda.len() > u.len() {
        return Ok(S::zero());
    }
    let value = unsigned_nimmo(lambda, &vars)?;
    Ok(if nimmo_sign(lambda, vars.len())? { -value } else { value })
}

/// `Q_λ(u)` as the coefficient of `z^λ` in `∏_i Q_u(z_i) ∏_{i<j} (z_i - z_j)/(z_i + z_j)`,
/// with `(z-w)/(z+w) = 1 + 2 Σ_k (-1)^k z^{-k} w^k`. Every contributing term has
/// total u-degree `|λ|`, so the sum is finite and exact.
pub fn schur_q_generating<S: Scalar>(lambda: &StrictPartition, u: &[S]) -> S {
    let l = lambda.len();
    let w = lambda.weight();
    let q = q_gen(u, w);
    let pairs: Vec<(usize, usize)> = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).collect();
    let mut ks = vec![0usize; pairs.len()];
    let mut total = S::zero();
    gen_rec(lambda.parts(), &pairs, 0, &mut ks, &q, &mut total);
    total
}

fn gen_rec<S: Scalar>(
    lambda: &[usize],
    pairs: &[(usize, usize)],
    pos: usize,
    ks: &mut Vec<usize>,
    q: &TruncatedSeries1<S>,
    total: &mut S,
) {
    let w: usize = lambda.iter().sum();
    // a_i = λ_i + Σ_{j>i} k_ij - Σ_{j<i} k_ji must stay within 0..=|λ|
    let exponents = |ks: &[usize], upto: usize| -> Vec<i64> {
        let mut a: Vec<i64> = lambda.iter().map(|&p| p as i64).collect();
        for (t, &(i, j)) in pairs.iter().enumerate().take(upto) {
            a[i] += ks[t] as i64;
            a[j] -= ks[t] as i64;
        }
        a
    };
    if pos == pairs.len() {
        let a = exponents(ks, pos);
        if a.iter().any(|&x| x < 0 || x as usize > w) {
            return;
        }
        let mut term = a.iter().fold(S::one(), |acc, &x| acc * q.coeff(x as usize));
        for &k in ks.iter() {
            if k > 0 {
                let c = if k % 2 == 0 { 2 } else { -2 };
                term = term * S::from_int(c);
            }
        }
        *total = total.clone() + term;
        return;
    }
    for k in 0..=w {
        ks[pos] = k;
        let a = exponents(ks, pos + 1);
        if a.iter().any(|&x| x as usize > w && x > 0) {
            break;
        }
        gen_rec(lambda, pairs, pos + 1, ks, q, total);
    }
    ks[pos] = 0;
}

/// Parameters `u = (u_1..u_n)`, `v = (v_1..v_n)` of the shifted Schur measure.
///
/// `n` must be even; variables are distinct within `u` and within `v`, no two
/// sum to zero, and all lie in the open unit disc. A `u_i` may coincide with a
/// `v_j` (zero padding does this).
#[derive(Clone, Debug, PartialEq)]
pub struct SSParams {
    u: Vec<C64>,
    v: Vec<C64>,
}

impl SSParams {
    pub fn new(u: Vec<C64>, v: Vec<C64>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::DimensionMismatch(format!("{} u-variables but {} v-variables", u.len(), v.len())));
        }
        if u.len() % 2 == 1 {
            return Err(Error::Precondition(format!("n = {} is odd; pad with a zero variable", u.len())));
        }
        if let Some(x) = u.iter().chain(&v).find(|x| x.norm() >= 1.0) {
            return Err(Error::DegenerateParameters(format!("{x} is outside the unit disc")));
        }
        check_variables(&u, "u")?;
        check_variables(&v, "v")?;
        Ok(Self { u, v })
    }

    /// Pads `u` and `v` with zeros to a common even length.
    pub fn padded(mut u: Vec<C64>, mut v: Vec<C64>) -> Result<Self> {
        let mut n = u.len().max(v.len());
        n += n % 2;
        u.resize(n, C64::new(0.0, 0.0));
        v.resize(n, C64::new(0.0, 0.0));
        Self::new(u, v)
    }

    pub fn n(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &[C64] {
        &self.u
    }

    pub fn v(&self) -> &[C64] {
        &self.v
    }

    /// `max_i |u_i| · max_j |v_j|`.
    pub fn rho(&self) -> f64 {
        let mu = self.u.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let mv = self.v.iter().map(|x| x.norm()).fold(0.0, f64::max);
        mu * mv
    }

    /// Largest modulus among all variables.
    pub fn radius(&self) -> f64 {
        self.u.iter().chain(&self.v).map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// `Z_SS = ∏_{i,j} (1 + u_i v_j)/(1 - u_i v_j)`.
pub fn ss_normalizer(p: &SSParams) -> C64 {
    let one = C64::new(1.0, 0.0);
    p.u.iter().flat_map(|a| p.v.iter().map(move |b| (one + a * b) / (one - a * b))).product()
}

/// `2^{-ℓ(λ)} Q_λ(u) Q_λ(v)`.
pub fn cauchy_term(lambda: &StrictPartition, p: &SSParams) -> Result<C64> {
    Ok(schur_q(lambda, &p.u)? * schur_q(lambda, &p.v)? / 2f64.powi(lambda.len() as i32))
}

/// `P_SS(λ)`.
pub fn ss_probability(lambda: &StrictPartition, p: &SSParams) -> Result<C64> {
    Ok(cauchy_term(lambda, p)? / ss_normalizer(p))
}

/// A truncated sum together with a bound on the omitted part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncated {
    pub value: C64,
    pub tail_bound: f64,
}

/// Bound on `Σ_{|λ| > w} 2^{-ℓ} |Q_λ(u) Q_λ(v)|`.
///
/// `Q_λ` has non-negative monomial coefficients, so the weight-`k` stratum is
/// at most `[t^k] ((1 + ρt)/(1 - ρt))^{n^2}` with `ρ = max|u| max|v|`; the
/// tail is that majorant at `t = 1` minus its partial sum.
pub fn cauchy_tail_bound(p: &SSParams, w: usize) -> f64 {
    let rho = p.rho();
    if rho == 0.0 {
        return 0.0;
    }
    let n2 = p.n() * p.n();
    let g = q_gen(&vec![C64::new(rho, 0.0); n2], w);
    let partial: f64 = g.coeffs().iter().map(|c| c.re).sum();
    let full = ((1.0 + rho) / (1.0 - rho)).powi(n2 as i32);
    // the subtraction loses ~1e-16 relative to `full`
    (full - partial).max(0.0) + 4.0 * f64::EPSILON * full
}

/// `Σ_{|λ| <= w} 2^{-ℓ(λ)} Q_λ(u) Q_λ(v)`, parallel over weight strata, merged in weight order.
pub fn cauchy_sum(p: &SSParams, w: usize) -> Result<Truncated> {
    let strata: Vec<C64> = (0..=w)
        .into_par_iter()
        .map(|k| StrictPartition::of_weight(k, p.n()).iter().try_fold(C64::new(0.0, 0.0), |acc, l| Ok(acc + cauchy_term(l, p)?)))
        .collect::<Result<Vec<C64>>>()?;
    let value = strata.into_iter().fold(C64::new(0.0, 0.0), |a, b| a + b);
    Ok(Truncated { value, tail_bound: cauchy_tail_bound(p, w) })
}

/// `ρ_SS(λ) = Σ_{μ ⊇ λ} P_SS(μ)` over `|μ| <= w`, with the tail bound divided by `|Z|`.
pub fn rho_ss_bruteforce(lambda: &StrictPartition, p: &SSParams, w: usize) -> Result<Truncated> {
    let z = ss_normalizer(p);
    let strata: Vec<C64> = (0..=w)
        .into_par_iter()
        .map(|k| {
            StrictPartition::of_weight(k, p.n())
                .iter()
                .filter(|mu| mu.contains(lambda))
                .try_fold(C64::new(0.0, 0.0), |acc, mu| Ok(acc + cauchy_term(mu, p)?))
        })
        .collect::<Result<Vec<C64>>>()?;
    let value = strata.into_iter().fold(C64::new(0.0, 0.0), |a, b| a + b) / z;
    Ok(Truncated { value, tail_bound: cauchy_tail_bound(p, w) / z.norm() })
}

fn eta_inv_sqrt(r: usize) -> f64 {
    if r == 0 {
        1.0
    } else {
        std::f64::consts::SQRT_2
    }
}

/// Default ground-set cutoff `2 · max part + 16`.
pub fn default_cutoff(lambda: &StrictPartition) -> usize {
    2 * lambda.parts.first().copied().unwrap_or(0) + 16
}

/// The kernel `L = [[𝒱, 𝒲η^{-1/2}], [-η^{-1/2}ᵗ𝒲, 0]]` on `{1..n} ⊔ {0..cutoff}`.
/// Block indices `0..n` are the variables (labels `x1..xn`), then `n + r` is the point `r`.
pub fn build_l(p: &SSParams, cutoff: usize) -> SkewKernel<C64> {
    let n = p.n();
    let size = n + cutoff + 1;
    let zero = C64::new(0.0, 0.0);
    let m = BlockSkewMatrix::from_blocks(size, |a, b| match (a < n, b < n) {
        (true, true) => [[-ratio(&p.u, a, b), zero], [zero, ratio(&p.v, a, b)]],
        (true, false) => {
            let r = b - n;
            let c = eta_inv_sqrt(r);
            [[-powi(&p.u[a], r as i64) * c, zero], [zero, powi(&p.v[a], r as i64) * c]]
        }
        _ => [[zero; 2]; 2],
    });
    let labels = (1..=n).map(|i| format!("x{i}")).chain((0..=cutoff).map(|r| r.to_string())).collect();
    SkewKernel::new(labels, m).expect("label count matches")
}

/// `pf(L[{1..n} ∪ X])` for a finite `X ⊆ {0..cutoff}`.
pub fn l_pfaffian(l: &SkewKernel<C64>, n: usize, x: &[usize]) -> Result<C64> {
    let idx: Vec<usize> = (0..n).chain(x.iter().map(|&r| n + r)).collect();
    if idx.len() % 2 == 1 {
        return Ok(C64::new(0.0, 0.0));
    }
    Ok(l.restrict(&idx)?.pfaffian())
}

/// Right-hand side `2^{-ℓ} Q_λ(u) Q_λ(v) ∏_{i<j} u-ratios ∏_{i<j} v-ratios`.
pub fn l_pfaffian_formula(lambda: &StrictPartition, p: &SSParams) -> Result<C64> {
    Ok(cauchy_term(lambda, p)? * ratio_product(&p.u) * ratio_product(&p.v))
}

/// `𝓜`, blockwise `[[(u_k-u_l)/(u_k+u_l), -(1+u_k v_l)/(1-u_k v_l)], [(1+v_k u_l)/(1-v_k u_l), -(v_k-v_l)/(v_k+v_l)]]`.
pub fn m_matrix(p: &SSParams) -> BlockSkewMatrix<C64> {
    let one = C64::new(1.0, 0.0);
    BlockSkewMatrix::from_blocks(p.n(), |k, l| {
        [
            [ratio(&p.u, k, l), -(one + p.u[k] * p.v[l]) / (one - p.u[k] * p.v[l])],
            [(one + p.v[k] * p.u[l]) / (one - p.v[k] * p.u[l]), -ratio(&p.v, k, l)],
        ]
    })
}

/// `𝒲 η^{-1/2} J η^{-1/2} ᵗ𝒲 - 𝒱` with the ground set cut at `{0..cutoff}`.
pub fn m_matrix_truncated(p: &SSParams, cutoff: usize) -> Result<BlockSkewMatrix<C64>> {
    let l = build_l(p, cutoff);
    let n = p.n();
    let full = l.matrix().as_matrix();
    let vars: Vec<usize> = (0..2 * n).collect();
    let ground: Vec<usize> = (2 * n..full.rows()).collect();
    let a = full.principal(&vars)?;
    let b = full.select(&vars, &ground)?;
    let j = crate::skewmat::make_j::<C64>(cutoff + 1);
    let m = b.mul(j.as_matrix())?.mul(&b.transpose())?.sub(&a)?;
    BlockSkewMatrix::antisymmetrized(&m)
}

/// `pf(𝓜) = Z ∏_{i<j} (u_i-u_j)/(u_i+u_j) ∏_{i<j} (v_i-v_j)/(v_i+v_j)`.
pub fn pf_m_product(p: &SSParams) -> C64 {
    ss_normalizer(p) * ratio_product(&p.u) * ratio_product(&p.v)
}

/// `∏_{i != k} (x_k + x_i)/(x_k - x_i)`.
fn cross(x: &[C64], k: usize) -> C64 {
    (0..x.len()).filter(|&i| i != k).map(|i| (x[k] + x[i]) / (x[k] - x[i])).product()
}

/// `∏_j (1 - a b_j)/(1 + a b_j)`.
fn damp(a: C64, b: &[C64]) -> C64 {
    let one = C64::new(1.0, 0.0);
    b.iter().map(|bj| (one - a * bj) / (one + a * bj)).product()
}

/// Closed-form `𝓜^{-1}`.
pub fn m_inverse_closed(p: &SSParams) -> BlockSkewMatrix<C64> {
    let (u, v) = (&p.u, &p.v);
    let one = C64::new(1.0, 0.0);
    let du: Vec<C64> = u.iter().map(|&a| damp(a, v)).collect();
    let dv: Vec<C64> = v.iter().map(|&b| damp(b, u)).collect();
    let cu: Vec<C64> = (0..u.len()).map(|k| cross(u, k)).collect();
    let cv: Vec<C64> = (0..v.len()).map(|k| cross(v, k)).collect();
    let mi00 = |k: usize, l: usize| du[k] * du[l] * cu[k] * cu[l] * ratio(u, k, l);
    let mi01 = |k: usize, l: usize| du[k] * dv[l] * cu[k] * cv[l] * (one + u[k] * v[l]) / (one - u[k] * v[l]);
    let mi11 = |k: usize, l: usize| -dv[k] * dv[l] * cv[k] * cv[l] * ratio(v, k, l);
    BlockSkewMatrix::from_blocks(p.n(), |k, l| [[mi00(k, l), mi01(k, l)], [-mi01(l, k), mi11(k, l)]])
}

/// The correlation kernel from the closed form of `𝓜^{-1}`:
/// `K(r,s) = -η(r)^{-1/2} η(s)^{-1/2} Σ_{k,l} ᵗ𝒲(k,r) 𝓜^{-1}(k,l) 𝒲(l,s)`.
#[derive(Clone, Debug)]
pub struct MatrixKernel {
    params: SSParams,
    mi: BlockSkewMatrix<C64>,
}

impl MatrixKernel {
    pub fn new(p: &SSParams) -> Self {
        Self { params: p.clone(), mi: m_inverse_closed(p) }
    }

    pub fn block(&self, r: usize, s: usize) -> Block<C64> {
        let (u, v) = (&self.params.u, &self.params.v);
        let n = self.params.n();
        let zero = C64::new(0.0, 0.0);
        let mut k = [[zero; 2]; 2];
        for a in 0..n {
            let (ur, vr) = (powi(&u[a], r as i64), powi(&v[a], r as i64));
            for b in 0..n {
                let (us, vs) = (powi(&u[b], s as i64), powi(&v[b], s as i64));
                let m = self.mi.block(a, b);
                k[0][0] -= ur * m[0][0] * us;
                k[0][1] += ur * m[0][1] * vs;
                k[1][0] += vr * m[1][0] * us;
                k[1][1] -= vr * m[1][1] * vs;
            }
        }
        let c = eta_inv_sqrt(r) * eta_inv_sqrt(s);
        k.map(|row| row.map(|x| x * c))
    }

    /// `𝒦[λ_1..λ_ℓ]`.
    pub fn submatrix(&self, points: &[usize]) -> BlockSkewMatrix<C64> {
        BlockSkewMatrix::from_blocks(points.len(), |a, b| self.block(points[a], points[b]))
    }
}

/// How `(zw+1)/(zw-1)` in `𝒦_01` is expanded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ZwExpansion {
    /// `1 + 2 Σ_{k>=1} (zw)^{-k}`, valid for `|zw| > 1`.
    #[default]
    Outer,
    /// `-(1 + 2 Σ_{k>=1} (zw)^k)`, valid for `|zw| < 1`. The two differ by
    /// `2 Σ_{k ∈ ℤ} (zw)^k`, which shifts `𝒦_01(r,s)` by `δ_rs`; only
    /// `Outer` gives `ρ((r)) -> 0` as `u, v -> 0`.
    Inner,
}

/// The correlation kernel by coefficient extraction:
///
/// * `𝒦_00 = ½ [z^r w^s] Q_u(z)Q_u(w) / (Q_v(1/z)Q_v(1/w)) · (1 + 2Σ_k (-1)^k z^{-k} w^k)`
/// * `𝒦_01 = ½ [z^r w^s] Q_u(z)Q_v(w) / (Q_v(1/z)Q_u(1/w)) · (zw+1)/(zw-1)`, see [`ZwExpansion`]
/// * `𝒦_11 = ½ [z^r w^s] Q_v(z)Q_v(w) / (Q_u(1/z)Q_u(1/w)) · (-(1 + 2Σ_k (-1)^k z^{-k} w^k))`
/// * `𝒦_10(r,s) = -𝒦_01(s,r)`
#[derive(Clone, Debug)]
pub struct SeriesKernel {
    order: usize,
    radius: f64,
    f00: TruncatedSeries2<C64>,
    f01: TruncatedSeries2<C64>,
    f11: TruncatedSeries2<C64>,
}

impl SeriesKernel {
    pub fn new(p: &SSParams, order: usize) -> Result<Self> {
        Self::with_expansion(p, order, ZwExpansion::Outer)
    }

    pub fn with_expansion(p: &SSParams, order: usize, expansion: ZwExpansion) -> Result<Self> {
        let n = order;
        let ratio_part = |num_z: &[C64], den_z: &[C64], num_w: &[C64], den_w: &[C64]| -> Result<TruncatedSeries2<C64>> {
            let a = TruncatedSeries2::from_z(&q_gen(num_z, n), false);
            let b = TruncatedSeries2::from_z(&q_gen_reciprocal(den_z, n), true);
            let c = TruncatedSeries2::from_w(&q_gen(num_w, n), false);
            let d = TruncatedSeries2::from_w(&q_gen_reciprocal(den_w, n), true);
            a.mul(&b)?.mul(&c)?.mul(&d)
        };
        let two = C64::new(2.0, 0.0);
        let alternating = TruncatedSeries2::from_fn(n, |i, j| match (i, j) {
            (0, 0) => C64::new(1.0, 0.0),
            (i, j) if i < 0 && j == -i => two * if j % 2 == 0 { 1.0 } else { -1.0 },
            _ => C64::new(0.0, 0.0),
        });
        let diagonal = match expansion {
            ZwExpansion::Outer => TruncatedSeries2::from_fn(n, |i, j| match (i, j) {
                (0, 0) => C64::new(1.0, 0.0),
                (i, j) if i < 0 && i == j => two,
                _ => C64::new(0.0, 0.0),
            }),
            ZwExpansion::Inner => TruncatedSeries2::from_fn(n, |i, j| match (i, j) {
                (0, 0) => C64::new(-1.0, 0.0),
                (i, j) if i > 0 && i == j => -two,
                _ => C64::new(0.0, 0.0),
            }),
        };
        let half = C64::new(0.5, 0.0);
        let (u, v) = (p.u(), p.v());
        Ok(Self {
            order,
            radius: p.radius(),
            f00: ratio_part(u, v, u, v)?.mul(&alternating)?.scale(&half),
            f01: ratio_part(u, v, v, u)?.mul(&diagonal)?.scale(&half),
            f11: ratio_part(v, u, v, u)?.mul(&alternating)?.scale(&-half),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn check(&self, r: usize, s: usize) -> Result<()> {
        let required = r + s + GUARD_BAND;
        if self.order < required {
            return Err(Error::InsufficientOrder { required, got: self.order });
        }
        Ok(())
    }

    pub fn block(&self, r: usize, s: usize) -> Result<Block<C64>> {
        self.check(r, s)?;
        let (ri, si) = (r as i64, s as i64);
        Ok([[self.f00.coeff(ri, si), self.f01.coeff(ri, si)], [-self.f01.coeff(si, ri), self.f11.coeff(ri, si)]])
    }

    /// Rough size of the neglected coefficients, `ρ^{N + 1 - r - s}` with `ρ` the largest variable modulus.
    pub fn tail_estimate(&self, r: usize, s: usize) -> f64 {
        crate::series::tail_estimate(self.order, r, s, self.radius, 1.0)
    }

    pub fn submatrix(&self, points: &[usize]) -> Result<BlockSkewMatrix<C64>> {
        for &a in points {
            for &b in points {
                self.check(a, b)?;
            }
        }
        Ok(BlockSkewMatrix::from_blocks(points.len(), |a, b| self.block(points[a], points[b]).expect("order checked")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhoMethod {
    Matrix,
    Series { order: usize },
    BruteForce { weight_cut: usize },
}

impl fmt::Display for RhoMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RhoMethod::Matrix => f.write_str("matrix"),
            RhoMethod::Series { .. } => f.write_str("series"),
            RhoMethod::BruteForce { .. } => f.write_str("bruteforce"),
        }
    }
}

/// `ρ_SS(λ)` by the requested route.
pub fn rho_ss(lambda: &StrictPartition, p: &SSParams, method: RhoMethod) -> Result<Truncated> {
    match method {
        RhoMethod::Matrix => {
            let k = MatrixKernel::new(p).submatrix(lambda.parts());
            Ok(Truncated { value: k.pfaffian(), tail_bound: 0.0 })
        }
        RhoMethod::Series { order } => {
            let kernel = SeriesKernel::new(p, order)?;
            let k = kernel.submatrix(lambda.parts())?;
            let max = lambda.parts().first().copied().unwrap_or(0);
            Ok(Truncated { value: k.pfaffian(), tail_bound: kernel.tail_estimate(max, max) })
        }
        RhoMethod::BruteForce { weight_cut } => rho_ss_bruteforce(lambda, p, weight_cut),
    }
}
