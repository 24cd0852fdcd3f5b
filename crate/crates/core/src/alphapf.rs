//! The α-pfaffian.
//!
//! For a `2m x 2m` skew matrix `B` and a cycle `τ = (k_1 .. k_r)` of block
//! indices, the weights `P(B)(τ)` and `Q(B)(τ)` are signed sums of products of
//! block entries along the cycle. Both are computed as 2x2 matrix chains:
//!
//! * `2 P(τ) = tr((-J_1) B(k_1,k_2) (-J_1) B(k_2,k_3) .. (-J_1) B(k_r,k_1))`
//! * `Q(τ) = [G(k_1,k_2) .. G(k_r,k_1)]_{00}` with `G(a,b)_{ij} = (-1)^j B_{i,j+1}(a,b)`
//!
//! and `pf_α(B) = Σ_{σ ∈ S_m} α^{m - ν(σ)} ∏_{cycles} Q(B)(cycle)`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::permcycle::{decompose, factorial, mn_character, permutations, IntegerPartition};
use crate::series::{exp_series, interpolate, TruncatedSeries1};
use crate::skewmat::{alpha_det, make_j, powi, Block, BlockSkewMatrix, Matrix, Scalar};

/// Largest block size accepted by [`alpha_pf_dp`]; memory grows like `2^m m`.
pub const DP_MAX_M: usize = 20;

/// Largest block size accepted by the brute-force [`alpha_pf`].
pub const BRUTE_MAX_M: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    BruteForce,
    Dp,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::BruteForce => "bruteforce",
            Method::Dp => "dp",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaPfResult<S> {
    pub value: S,
    pub method: Method,
    pub m: usize,
}

type M2<S> = [[S; 2]; 2];

fn m2_mul<S: Scalar>(a: &M2<S>, b: &M2<S>) -> M2<S> {
    let e = |i: usize, j: usize| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone();
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn m2_identity<S: Scalar>() -> M2<S> {
    [[S::one(), S::zero()], [S::zero(), S::one()]]
}

/// `(-J_1) B(r,s)`.
fn minus_j_block<S: Scalar>(b: &Block<S>) -> M2<S> {
    [[-b[1][0].clone(), -b[1][1].clone()], [b[0][0].clone(), b[0][1].clone()]]
}

/// `G(r,s)_{ij} = (-1)^j B_{i,j+1}(r,s)`.
fn g_block<S: Scalar>(b: &Block<S>) -> M2<S> {
    [[b[0][1].clone(), -b[0][0].clone()], [b[1][1].clone(), -b[1][0].clone()]]
}

fn check_cycle(b_m: usize, tau: &[usize]) -> Result<()> {
    if tau.is_empty() {
        return Err(Error::InvalidPermutation("empty cycle".into()));
    }
    if let Some(&bad) = tau.iter().find(|&&k| k >= b_m) {
        return Err(Error::IndexOutOfRange { index: bad, bound: b_m });
    }
    if tau.iter().duplicates().next().is_some() {
        return Err(Error::InvalidPermutation(format!("cycle {tau:?} repeats an entry")));
    }
    Ok(())
}

/// `P(B)(τ)` for a cycle of 0-based block indices, via the trace of the
/// `(-J_1) B` chain. Any rotation of `τ` gives the same value.
pub fn cycle_p<S: Scalar>(b: &BlockSkewMatrix<S>, tau: &[usize]) -> Result<S> {
    check_cycle(b.m(), tau)?;
    let r = tau.len();
    let chain = (0..r).fold(m2_identity(), |acc, p| m2_mul(&acc, &minus_j_block(&b.block(tau[p], tau[(p + 1) % r]))));
    Ok((chain[0][0].clone() + chain[1][1].clone()) * S::from_ratio(1, 2))
}

/// `Q(B)(τ)`; `τ` must start with its smallest entry.
pub fn cycle_q<S: Scalar>(b: &BlockSkewMatrix<S>, tau: &[usize]) -> Result<S> {
    check_cycle(b.m(), tau)?;
    if tau.iter().any(|&k| k < tau[0]) {
        return Err(Error::NonCanonicalCycle(tau.iter().map(|k| k + 1).collect()));
    }
    Ok(q_unchecked(b, tau))
}

fn q_unchecked<S: Scalar>(b: &BlockSkewMatrix<S>, tau: &[usize]) -> S {
    let r = tau.len();
    if r == 1 {
        return b.b(0, 1, tau[0], tau[0]).clone();
    }
    let mut row = [S::one(), S::zero()];
    for p in 0..r {
        let g = g_block(&b.block(tau[p], tau[(p + 1) % r]));
        row = [
            row[0].clone() * g[0][0].clone() + row[1].clone() * g[1][0].clone(),
            row[0].clone() * g[0][1].clone() + row[1].clone() * g[1][1].clone(),
        ];
    }
    row[0].clone()
}

/// `Q(B)(τ)` by the literal sum over `(i_2, .., i_r) ∈ {0,1}^{r-1}`; an
/// independent cross-check of [`cycle_q`].
pub fn cycle_q_expanded<S: Scalar>(b: &BlockSkewMatrix<S>, tau: &[usize]) -> Result<S> {
    check_cycle(b.m(), tau)?;
    if tau.iter().any(|&k| k < tau[0]) {
        return Err(Error::NonCanonicalCycle(tau.iter().map(|k| k + 1).collect()));
    }
    let r = tau.len();
    if r == 1 {
        return Ok(b.b(0, 1, tau[0], tau[0]).clone());
    }
    let mut total = S::zero();
    for mask in 0u32..(1 << (r - 1)) {
        // idx[p] = i_{p+1}; i_1 = 0 is fixed and the closing factor uses column 1
        let idx: Vec<usize> = std::iter::once(0).chain((0..r - 1).map(|t| (mask >> t & 1) as usize)).collect();
        let mut term = S::one();
        for p in 0..r {
            let col = if p + 1 < r { (idx[p + 1] + 1) % 2 } else { 1 };
            term = term * b.b(idx[p], col, tau[p], tau[(p + 1) % r]).clone();
        }
        total = if mask.count_ones() % 2 == 0 { total + term } else { total - term };
    }
    Ok(total)
}

/// Largest `m` for which cycle weights are memoized during enumeration
/// (there are `Σ_k C(m,k) (k-1)!` distinct cycles).
const CYCLE_CACHE_MAX_M: usize = 8;

/// Walks the permutations of `S_m` with a fixed `σ(1)`, adding each product
/// of cycle weights into a bucket indexed by the number of cycles.
struct Enumeration<'a, S> {
    g: &'a [Vec<M2<S>>],
    cache: Option<HashMap<u64, S>>,
    images: Vec<usize>,
    used: Vec<bool>,
    by_cycles: Vec<S>,
}

impl<'a, S: Scalar> Enumeration<'a, S> {
    fn new(g: &'a [Vec<M2<S>>]) -> Self {
        let m = g.len();
        Self {
            g,
            cache: (m <= CYCLE_CACHE_MAX_M).then(HashMap::new),
            images: vec![usize::MAX; m],
            used: vec![false; m],
            by_cycles: vec![S::zero(); m + 1],
        }
    }

    fn weight(&mut self, cycle: &[usize]) -> S {
        let g = self.g;
        match &mut self.cache {
            // entries are below 8, so 4 bits each plus a leading marker identify the cycle
            Some(cache) => {
                let key = cycle.iter().fold(1u64, |k, &x| k << 4 | x as u64);
                cache.entry(key).or_insert_with(|| q_from_g(g, cycle)).clone()
            }
            None => q_from_g(g, cycle),
        }
    }

    fn add_current(&mut self) {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut term = S::one();
        let mut cycles = 0usize;
        let mut cycle = Vec::with_capacity(m);
        for start in 0..m {
            if seen[start] {
                continue;
            }
            // `start` is the smallest unvisited index, so the cycle comes out canonical
            cycle.clear();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            cycles += 1;
            term = term * self.weight(&cycle);
            if term.is_zero() {
                return;
            }
        }
        let bucket = std::mem::replace(&mut self.by_cycles[cycles], S::zero());
        self.by_cycles[cycles] = bucket + term;
    }

    fn fill(&mut self, pos: usize) {
        let m = self.images.len();
        if pos == m {
            self.add_current();
            return;
        }
        for x in 0..m {
            if !self.used[x] {
                self.used[x] = true;
                self.images[pos] = x;
                self.fill(pos + 1);
                self.used[x] = false;
            }
        }
    }

    /// `Σ_{σ(1) = first} ∏_cycles Q`, split by cycle count.
    fn run(&mut self, first: usize) -> Vec<S> {
        self.images[0] = first;
        self.used[first] = true;
        self.fill(1);
        self.used[first] = false;
        let m = self.images.len();
        std::mem::replace(&mut self.by_cycles, vec![S::zero(); m + 1])
    }
}

fn q_from_g<S: Scalar>(g: &[Vec<M2<S>>], tau: &[usize]) -> S {
    let r = tau.len();
    let mut row = [S::one(), S::zero()];
    for p in 0..r {
        let gp = &g[tau[p]][tau[(p + 1) % r]];
        row = [
            row[0].clone() * gp[0][0].clone() + row[1].clone() * gp[1][0].clone(),
            row[0].clone() * gp[0][1].clone() + row[1].clone() * gp[1][1].clone(),
        ];
    }
    row[0].clone()
}

/// `pf_α(B)` by summing over all of `S_m`.
///
/// Terms are collected by cycle count `ν` and weighted by `α^{m-ν}` at the
/// end. For `m >= 8` the sum is split by `σ(1)` across worker threads and
/// the partial sums are recombined in that fixed order.
pub fn alpha_pf<S: Scalar>(b: &BlockSkewMatrix<S>, alpha: &S) -> Result<AlphaPfResult<S>> {
    let m = b.m();
    if m > BRUTE_MAX_M {
        return Err(Error::TooLarge { what: "brute-force block size m", size: m, limit: BRUTE_MAX_M });
    }
    let g: Vec<Vec<M2<S>>> = (0..m).map(|r| (0..m).map(|s| g_block(&b.block(r, s))).collect()).collect();
    let parts: Vec<Vec<S>> = if m >= 8 {
        (0..m).into_par_iter().map(|f| Enumeration::new(&g).run(f)).collect()
    } else {
        let mut walk = Enumeration::new(&g);
        (0..m).map(|f| walk.run(f)).collect()
    };
    let mut value = if m == 0 { S::one() } else { S::zero() };
    for (nu, alpha_power) in (1..=m).rev().zip(0..) {
        let bucket = parts.iter().fold(S::zero(), |acc, p| acc + p[nu].clone());
        value = value + powi(alpha, alpha_power) * bucket;
    }
    Ok(AlphaPfResult { value, method: Method::BruteForce, m })
}

/// `pf_α(B)` by the defining sum with `P` weights instead of `Q` weights.
pub fn alpha_pf_p<S: Scalar>(b: &BlockSkewMatrix<S>, alpha: &S) -> Result<S> {
    let m = b.m();
    if m > BRUTE_MAX_M {
        return Err(Error::TooLarge { what: "brute-force block size m", size: m, limit: BRUTE_MAX_M });
    }
    let mut total = S::zero();
    for sigma in permutations(m) {
        let d = decompose(&sigma);
        let mut term = powi(alpha, (m - d.cycle_count()) as i64);
        for c in d.cycles() {
            term = term * cycle_p(b, c)?;
        }
        total = total + term;
    }
    Ok(total)
}

/// `pf_α(B)` by a cycle-cover dynamic program over subsets.
///
/// Cycles are opened in increasing order of their smallest element. While a
/// cycle with leader `a` is open the state is (used set, last vertex) with a
/// 2-vector `e_0ᵀ G(a,k_2) .. G(k_{j-1},k_j)`; every extension contributes
/// one factor of `α`, so a closed cycle of length `r` carries `α^{r-1}`.
/// Cost `O(2^m m^2)` time, `O(2^m m)` memory.
pub fn alpha_pf_dp<S: Scalar>(b: &BlockSkewMatrix<S>, alpha: &S) -> Result<AlphaPfResult<S>> {
    let m = b.m();
    if m > DP_MAX_M {
        return Err(Error::TooLarge { what: "DP block size m", size: m, limit: DP_MAX_M });
    }
    let g: Vec<Vec<M2<S>>> = (0..m).map(|r| (0..m).map(|s| g_block(&b.block(r, s))).collect()).collect();
    let full = (1usize << m) - 1;
    let mut closed = vec![S::zero(); 1 << m];
    closed[0] = S::one();
    for a in 0..m {
        let low = (1usize << a) - 1;
        let high_bits = m - a - 1;
        let assemble = |h: usize| low | (1 << a) | (h << (a + 1));
        // open[h * m + v]: path from a ending at v, using low ∪ {a} ∪ (h << (a+1))
        let mut open: Vec<Option<[S; 2]>> = vec![None; (1usize << high_bits) * m];
        for h in 0..(1usize << high_bits) {
            let start = &closed[low | (h << (a + 1))];
            if !start.is_zero() {
                open[h * m + a] = Some([start.clone(), S::zero()]);
            }
        }
        for h in 0..(1usize << high_bits) {
            let used = assemble(h);
            for v in 0..m {
                let Some(vec) = open[h * m + v].take() else { continue };
                let close = &g[v][a];
                let closing = vec[0].clone() * close[0][0].clone() + vec[1].clone() * close[1][0].clone();
                closed[used] = closed[used].clone() + closing;
                for u in a + 1..m {
                    if used >> u & 1 == 1 {
                        continue;
                    }
                    let gu = &g[v][u];
                    let next = [
                        alpha.clone() * (vec[0].clone() * gu[0][0].clone() + vec[1].clone() * gu[1][0].clone()),
                        alpha.clone() * (vec[0].clone() * gu[0][1].clone() + vec[1].clone() * gu[1][1].clone()),
                    ];
                    let slot = &mut open[(h | 1 << (u - a - 1)) * m + u];
                    *slot = Some(match slot.take() {
                        Some(old) => [old[0].clone() + next[0].clone(), old[1].clone() + next[1].clone()],
                        None => next,
                    });
                }
            }
        }
    }
    Ok(AlphaPfResult { value: closed[full].clone(), method: Method::Dp, m })
}

/// `ω(A)`: the skew matrix whose `(r,s)` block is `[[0, a_rs], [-a_sr, 0]]`.
pub fn omega_embed<S: Scalar>(a: &Matrix<S>) -> Result<BlockSkewMatrix<S>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    Ok(BlockSkewMatrix::from_blocks(a.rows(), |r, s| [[S::zero(), a[(r, s)].clone()], [-a[(s, r)].clone(), S::zero()]]))
}

/// z-series of `pf(J_m - α z B)^{-1/α}` through order `n`, formed as
/// `exp((1/2α) Σ_p (αz)^p tr(T^p) / p)` with `T = -J_m B`.
pub fn pf_expansion_lhs<S: Scalar>(b: &BlockSkewMatrix<S>, alpha: &S, n: usize) -> Result<TruncatedSeries1<S>> {
    if alpha.is_zero() {
        return Err(Error::AlphaZero);
    }
    let t = make_j::<S>(b.m()).as_matrix().mul(b.as_matrix())?.scale(&-S::one());
    let traces = t.power_traces(n)?;
    let two_alpha = S::from_int(2) * alpha.clone();
    let mut coeffs = vec![S::zero(); n + 1];
    for p in 1..=n {
        coeffs[p] = powi(alpha, p as i64) * traces[p - 1].clone() / (S::from_int(p as i64) * two_alpha.clone());
    }
    exp_series(&TruncatedSeries1::new(coeffs, n))
}

/// The `α -> 0` form `exp(z Σ_s B_01(s,s))`.
pub fn pf_expansion_limit<S: Scalar>(b: &BlockSkewMatrix<S>, n: usize) -> Result<TruncatedSeries1<S>> {
    let diag = (0..b.m()).fold(S::zero(), |acc, s| acc + b.b(0, 1, s, s).clone());
    exp_series(&TruncatedSeries1::new(vec![S::zero(), diag], n))
}

/// Right-hand side of the expansion theorem through `z^n`:
/// `[z^k] = (1/k!) Σ_{(s_1..s_k) ∈ [m]^k} pf_α(B[s_1..s_k])`, summed over all sequences.
pub fn pf_expansion_rhs<S: Scalar>(b: &BlockSkewMatrix<S>, alpha: &S, n: usize) -> Result<TruncatedSeries1<S>> {
    let m = b.m();
    let mut coeffs = vec![S::one()];
    for k in 1..=n {
        let mut total = S::zero();
        for seq in (0..k).map(|_| 0..m).multi_cartesian_product() {
            total = total + alpha_pf_dp(&b.submatrix(&seq)?, alpha)?.value;
        }
        coeffs.push(total / S::from_c64(num_complex::Complex64::new(factorial(k) as f64, 0.0)));
    }
    Ok(TruncatedSeries1::new(coeffs, n))
}

/// `c_k = Σ_{S ⊆ [m], #S = k} f(B[S])` for `k = 0..m` (increasing `S`).
pub fn subset_coefficients<S: Scalar>(
    b: &BlockSkewMatrix<S>,
    f: impl Fn(&BlockSkewMatrix<S>) -> Result<S>,
) -> Result<Vec<S>> {
    let m = b.m();
    let mut out = vec![S::zero(); m + 1];
    for (k, slot) in out.iter_mut().enumerate() {
        for subset in (0..m).combinations(k) {
            *slot = slot.clone() + f(&b.submatrix(&subset)?)?;
        }
    }
    Ok(out)
}

/// Polynomial coefficients of `z -> f(J_m + z B)` (degree at most `m`),
/// recovered by interpolation at `z = 0..m`.
pub fn shifted_coefficients<S: Scalar>(
    b: &BlockSkewMatrix<S>,
    f: impl Fn(&BlockSkewMatrix<S>) -> Result<S>,
) -> Result<Vec<S>> {
    let m = b.m();
    let j = make_j::<S>(m);
    let xs: Vec<S> = (0..=m as i64).map(S::from_int).collect();
    let ys = xs.iter().map(|z| f(&j.add(&b.scale(z))?)).collect::<Result<Vec<S>>>()?;
    interpolate(&xs, &ys)
}

/// `pf_α(J_m + z B)` evaluated directly and through `Σ_S z^{#S} pf_α(B[S])`.
pub fn alpha_pf_shifted<S: Scalar>(b: &BlockSkewMatrix<S>, alpha: &S, z: &S) -> Result<(S, S)> {
    let j = make_j::<S>(b.m());
    let direct = alpha_pf_dp(&j.add(&b.scale(z))?, alpha)?.value;
    let coeffs = subset_coefficients(b, |sub| Ok(alpha_pf_dp(sub, alpha)?.value))?;
    let expansion = coeffs.iter().rev().fold(S::zero(), |acc, c| acc * z.clone() + c.clone());
    Ok((direct, expansion))
}

/// `2^{-m} Σ_{i ∈ {0,1}^m} (-1)^{Σ i} det_{2α}(B_{i_r, i_s+1}(r,s))`.
pub fn alpha_pf_average<S: Scalar>(b: &BlockSkewMatrix<S>, alpha: &S) -> Result<S> {
    let m = b.m();
    if m > 16 {
        return Err(Error::TooLarge { what: "averaged-determinant block size m", size: m, limit: 16 });
    }
    let two_alpha = S::from_int(2) * alpha.clone();
    let mut total = S::zero();
    for mask in 0u32..(1 << m) {
        let i = |r: usize| (mask >> r & 1) as usize;
        let a = Matrix::from_fn(m, m, |r, s| b.b(i(r), (i(s) + 1) % 2, r, s).clone());
        let d = alpha_det(&a, &two_alpha)?;
        total = if mask.count_ones() % 2 == 0 { total + d } else { total - d };
    }
    Ok(total / powi(&S::from_int(2), m as i64))
}

/// `Z_k(T)`: power traces on and below the diagonal, `2, 4, .., 2(k-1)` on the superdiagonal.
pub fn z_matrix<S: Scalar>(t: &Matrix<S>, k: usize) -> Result<Matrix<S>> {
    let traces = t.power_traces(k)?;
    Ok(Matrix::from_fn(k, k, |i, j| {
        if j <= i {
            traces[i - j].clone()
        } else if j == i + 1 {
            S::from_int(2 * (i as i64 + 1))
        } else {
            S::zero()
        }
    }))
}

/// `𝕋^{(α)}_k(T) = det_α(Z_k(T)) / (2^k k!)`, with `𝕋_0 = 1`.
pub fn t_alpha<S: Scalar>(t: &Matrix<S>, k: usize, alpha: &S) -> Result<S> {
    if k == 0 {
        return Ok(S::one());
    }
    let z = z_matrix(t, k)?;
    let scale = powi(&S::from_int(2), k as i64) * S::from_c64(num_complex::Complex64::new(factorial(k) as f64, 0.0));
    Ok(alpha_det(&z, alpha)? / scale)
}

/// Character-weighted cycle sum `pf^λ(B) = Σ_σ χ^λ(σ) ∏ Q(B)(σ^{(j)})`.
pub fn immanant_pf<S: Scalar>(b: &BlockSkewMatrix<S>, lambda: &IntegerPartition) -> Result<S> {
    let m = b.m();
    if lambda.weight() != m {
        return Err(Error::WeightMismatch { left: lambda.weight(), right: m });
    }
    if m > BRUTE_MAX_M {
        return Err(Error::TooLarge { what: "immanant block size m", size: m, limit: BRUTE_MAX_M });
    }
    let mut by_type: Vec<(IntegerPartition, S)> = Vec::new();
    for sigma in permutations(m) {
        let d = decompose(&sigma);
        let prod = d.cycles().iter().fold(S::one(), |acc, c| acc * q_unchecked(b, c));
        let ty = d.cycle_type();
        match by_type.iter_mut().find(|(t, _)| *t == ty) {
            Some((_, v)) => *v = v.clone() + prod,
            None => by_type.push((ty, prod)),
        }
    }
    by_type.into_iter().try_fold(S::zero(), |acc, (rho, v)| Ok(acc + S::from_int(mn_character(lambda, &rho)?) * v))
}

/// `Imm_λ(A) = Σ_σ χ^λ(σ) ∏ a_{i σ(i)}`, by direct enumeration.
pub fn immanant<S: Scalar>(a: &Matrix<S>, lambda: &IntegerPartition) -> Result<S> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if lambda.weight() != n {
        return Err(Error::WeightMismatch { left: lambda.weight(), right: n });
    }
    let mut total = S::zero();
    for sigma in permutations(n) {
        let chi = mn_character(lambda, &decompose(&sigma).cycle_type())?;
        if chi == 0 {
            continue;
        }
        let prod = (0..n).fold(S::one(), |acc, i| acc * a[(i, sigma.apply(i))].clone());
        total = total + S::from_int(chi) * prod;
    }
    Ok(total)
}

/// `pf_0(B) = ∏_r B_01(r,r)`.
pub fn diagonal_product<S: Scalar>(b: &BlockSkewMatrix<S>) -> S {
    (0..b.m()).fold(S::one(), |acc, r| acc * b.b(0, 1, r, r).clone())
}
