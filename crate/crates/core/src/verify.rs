//! Named verification suites. Each suite runs a batch of identity checks on
//! seeded random inputs and records, per check, the largest observed error
//! against its tolerance.

use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use serde::Serialize;

use crate::alphapf::{
    alpha_pf, alpha_pf_average, alpha_pf_dp, omega_embed, pf_expansion_lhs, pf_expansion_rhs, shifted_coefficients,
    subset_coefficients,
};
use crate::ensemble::{derived_seed, random_matrix, random_scalar, random_skew, rng};
use crate::error::{Error, Result};
use crate::permcycle::{cycle_count_poly, decompose, enumerate_conjugacy_classes, factorial, mn_character, IntegerPartition, Permutation};
use crate::pointproc::{correlation_bruteforce, correlation_kernel, SkewKernel};
use crate::positivity::{
    check_pf_nonneg, congruence_pf, hadamard_pf, inverse_adjoint, polynomial_roots, random_s2m2, random_sh,
    shifted_pf_polynomial, ShiftMode,
};
use crate::series::{exp_series, log_series, power_series, q_gen, q_gen_reciprocal, TruncatedSeries1};
use crate::shiftedschur::{
    build_l, cauchy_sum, l_pfaffian, l_pfaffian_formula, m_inverse_closed, m_matrix, pf_m_product, phi_map, rho_ss,
    ss_normalizer, ss_probability, MatrixKernel, RhoMethod, SSParams, SeriesKernel, StrictPartition,
};
use crate::skewmat::{make_j, rel_err, BlockSkewMatrix, Matrix, Scalar, C64, QC};

/// Parameters shared by all suites.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Block size of the random matrices (clamped per check).
    pub m: usize,
    pub seed: u64,
    /// Truncation order of the series kernel.
    pub order: usize,
    /// Random instances per check.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { m: 4, seed: 7, order: 24, samples: 10 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    /// The identity being checked, in words.
    pub identity: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  [{verdict}] {:<28} max err {:.3e} (tol {:.1e})  {}", c.name, c.max_error, c.tolerance, c.identity)?;
        }
        Ok(())
    }
}

pub struct SuiteInfo {
    pub name: &'static str,
    pub description: &'static str,
    run: fn(&VerifyConfig) -> Result<Vec<Check>>,
}

pub const SUITES: &[SuiteInfo] = &[
    SuiteInfo {
        name: "permcycle",
        description: "cycle counting polynomial, cycle decomposition round trip, character orthogonality",
        run: suite_permcycle,
    },
    SuiteInfo {
        name: "skewmat",
        description: "pf^2 = det, subset expansion of pf(J + zB), pf(ᵗTBT) = pf(B) det T, minor summation",
        run: suite_skewmat,
    },
    SuiteInfo {
        name: "series",
        description: "power laws, exp/log inverse pair, Q-generating function reciprocity",
        run: suite_series,
    },
    SuiteInfo {
        name: "alphapf",
        description: "α = -1 reduction, DP vs brute force, 2α-determinant average, J-invariance, term count, z-series expansion",
        run: suite_alphapf,
    },
    SuiteInfo {
        name: "pointproc",
        description: "total mass, correlation functions as α-pfaffians of K_α",
        run: suite_pointproc,
    },
    SuiteInfo {
        name: "schur",
        description: "series vs matrix kernel, enumeration of ρ_SS, Cauchy identity, pf(𝓜), 𝓜^{-1}, L-kernel pfaffians",
        run: suite_schur,
    },
    SuiteInfo {
        name: "positivity",
        description: "subset pfaffian non-negativity, Hadamard-type inequality, congruence and inverse lemmas, shifted pfaffian roots",
        run: suite_positivity,
    },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let info = SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Parse(format!("unknown suite {name:?}; known: {}", suite_names().join(", "))))?;
    Ok(SuiteReport { suite: info.name, checks: (info.run)(cfg)? })
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|s| run_suite(s.name, cfg)).collect()
}

/// Collects errors for one check.
struct Probe {
    name: String,
    identity: &'static str,
    tolerance: f64,
    max_error: f64,
    failed: bool,
}

impl Probe {
    fn new(name: impl Into<String>, identity: &'static str, tolerance: f64) -> Self {
        Self { name: name.into(), identity, tolerance, max_error: 0.0, failed: false }
    }

    fn err(&mut self, e: f64) {
        self.max_error = self.max_error.max(e);
        if !(e <= self.tolerance) {
            self.failed = true;
        }
    }

    fn rel<S: Scalar>(&mut self, a: &S, b: &S) {
        self.err(rel_err(a, b));
    }

    fn exact(&mut self, ok: bool) {
        if !ok {
            self.err(f64::INFINITY);
        }
    }

    fn finish(self) -> Check {
        Check { name: self.name, identity: self.identity, max_error: self.max_error, tolerance: self.tolerance, passed: !self.failed }
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn suite_permcycle(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut poly = Probe::new("cycle_count_poly", "Σ_ρ #C_ρ x^{m-ℓ(ρ)} = ∏_k (kx + 1)", 0.0);
    let mut r = rng(cfg.seed);
    for m in 1..=7 {
        for _ in 0..5 {
            let x: QC = random_scalar(&mut r);
            let sum = enumerate_conjugacy_classes(m)
                .into_iter()
                .fold(QC::from_int(0), |acc, (rho, size)| acc + QC::from_int(size as i64) * crate::skewmat::powi(&x, (m - rho.len()) as i64));
            poly.exact(sum == cycle_count_poly(m, &x));
        }
    }
    let mut round = Probe::new("decompose_roundtrip", "reconstruct(decompose(σ)) = σ", 0.0);
    for k in 0..200 {
        let m = 1 + k % 10;
        let mut images: Vec<usize> = (0..m).collect();
        images.shuffle(&mut r);
        let sigma = Permutation::new(images)?;
        round.exact(decompose(&sigma).reconstruct() == sigma);
    }
    let mut orth = Probe::new("character_orthogonality", "Σ_ρ #C_ρ χ^λ(ρ) χ^μ(ρ) = n! δ_λμ", 0.0);
    for n in 1..=5 {
        let classes = enumerate_conjugacy_classes(n);
        for (la, mu) in IntegerPartition::all(n).iter().tuple_combinations::<(_, _)>().chain(IntegerPartition::all(n).iter().map(|p| (p, p))) {
            let mut s: i128 = 0;
            for (rho, size) in &classes {
                s += *size as i128 * mn_character(la, rho)? as i128 * mn_character(mu, rho)? as i128;
            }
            let expected = if la == mu { factorial(n) as i128 } else { 0 };
            orth.exact(s == expected);
        }
    }
    Ok(vec![poly.finish(), round.finish(), orth.finish()])
}

fn suite_skewmat(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut r = rng(cfg.seed);
    let m = cfg.m.clamp(1, 5);
    let mut sq = Probe::new("pf_squared_det", "pf(B)^2 = det(B)", 1e-8);
    let mut sub = Probe::new("subset_expansion_exact", "[z^k] pf(J + zB) = Σ_{#S=k} pf(B[S])", 0.0);
    let mut cong = Probe::new("congruence_exact", "pf(ᵗT B T) = pf(B) det(T)", 0.0);
    let mut minor = Probe::new("minor_summation", "Σ_I pf(B_I) det(T_I) = pf(T B ᵗT)", 1e-9);
    for _ in 0..cfg.samples {
        let b: BlockSkewMatrix<C64> = random_skew(m, &mut r);
        let pf = b.pfaffian();
        sq.rel(&(pf * pf), &b.as_matrix().det()?);
        let bq: BlockSkewMatrix<QC> = random_skew(m.min(4), &mut r);
        let lhs = shifted_coefficients(&bq, |x| Ok(x.pfaffian()))?;
        let rhs = subset_coefficients(&bq, |x| Ok(x.pfaffian()))?;
        sub.exact(lhs == rhs);
        let t: Matrix<QC> = random_matrix(bq.dim(), bq.dim(), &mut r);
        cong.exact(bq.congruence(&t)?.pfaffian() == bq.pfaffian() * t.det()?);
        let big: BlockSkewMatrix<C64> = random_skew(3, &mut r);
        let tt: Matrix<C64> = random_matrix(4, 6, &mut r);
        let direct = BlockSkewMatrix::new(tt.mul(big.as_matrix())?.mul(&tt.transpose())?)?.pfaffian();
        minor.rel(&crate::skewmat::minor_summation(big.as_matrix(), &tt)?, &direct);
    }
    Ok(vec![sq.finish(), sub.finish(), cong.finish(), minor.finish()])
}

fn suite_series(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut r = rng(cfg.seed);
    let n = 10;
    let mut pw = Probe::new("power_additivity", "s^{a+b} = s^a s^b", 1e-10);
    let mut el = Probe::new("exp_log", "exp(log s) = s", 1e-10);
    let mut qg = Probe::new("q_gen_reciprocal", "Q_u(z) ∏(1 - u_j z)/(1 + u_j z) = 1", 1e-12);
    for _ in 0..cfg.samples {
        let mut coeffs: Vec<C64> = (0..=n).map(|_| random_scalar::<C64, _>(&mut r) * 0.5).collect();
        coeffs[0] = c(1.0);
        let s = TruncatedSeries1::new(coeffs, n);
        let (a, b) = (C64::new(0.3, -0.2), C64::new(-1.1, 0.4));
        let lhs = power_series(&s, &(a + b))?;
        let rhs = power_series(&s, &a)?.mul(&power_series(&s, &b)?)?;
        for k in 0..=n {
            pw.err((lhs.coeff(k) - rhs.coeff(k)).norm());
        }
        let back = exp_series(&log_series(&s)?)?;
        for k in 0..=n {
            el.err((back.coeff(k) - s.coeff(k)).norm());
        }
        let u: Vec<C64> = (0..3).map(|_| random_scalar::<C64, _>(&mut r) * 0.4).collect();
        let prod = q_gen(&u, n).mul(&q_gen_reciprocal(&u, n))?;
        for k in 0..=n {
            qg.err((prod.coeff(k) - if k == 0 { c(1.0) } else { c(0.0) }).norm());
        }
    }
    Ok(vec![pw.finish(), el.finish(), qg.finish()])
}

fn exact_alphas() -> [QC; 5] {
    [QC::from_int(-1), QC::from_ratio(-1, 2), QC::from_int(0), QC::from_int(1), QC::from_int(2)]
}

fn suite_alphapf(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut r = rng(cfg.seed);
    let m = cfg.m.clamp(1, 6);
    let mut red = Probe::new("alpha_minus_one", "pf_{-1}(B) = pf(B)", 1e-9);
    let mut dp = Probe::new("dp_vs_bruteforce_exact", "subset DP = permutation sum", 0.0);
    let mut avg = Probe::new("two_alpha_det_average", "pf_α(B) = 2^{-m} Σ_i (-1)^{|i|} det_{2α}(B_i)", 0.0);
    let mut jinv = Probe::new("j_conjugation_invariance", "pf_α(ᵗJ B J) = pf_α(B)", 0.0);
    let mut omega = Probe::new("omega_embedding", "pf_α(ω(A)) = det_α(A)", 0.0);
    let mut blockdiag = Probe::new("block_diagonal_factorization", "pf_α(B_1 ⊕ B_2) = pf_α(B_1) pf_α(B_2)", 0.0);
    for _ in 0..cfg.samples {
        let b: BlockSkewMatrix<C64> = random_skew(m, &mut r);
        red.rel(&alpha_pf(&b, &c(-1.0))?.value, &b.pfaffian());
        let bq: BlockSkewMatrix<QC> = random_skew(m.min(5), &mut r);
        let j = make_j::<QC>(bq.m()).into_matrix();
        let conj = bq.congruence(&j)?;
        let a: Matrix<QC> = random_matrix(bq.m(), bq.m(), &mut r);
        let om = omega_embed(&a)?;
        let b1: BlockSkewMatrix<QC> = random_skew(2, &mut r);
        let b2: BlockSkewMatrix<QC> = random_skew(2, &mut r);
        let sum = BlockSkewMatrix::from_upper(4, |k, l| {
            if k < 4 && l < 4 {
                b1.entry(k, l).clone()
            } else if k >= 4 && l >= 4 {
                b2.entry(k - 4, l - 4).clone()
            } else {
                QC::from_int(0)
            }
        });
        for alpha in exact_alphas() {
            let brute = alpha_pf(&bq, &alpha)?.value;
            dp.exact(alpha_pf_dp(&bq, &alpha)?.value == brute);
            avg.exact(alpha_pf_average(&bq, &alpha)? == brute);
            jinv.exact(alpha_pf_dp(&conj, &alpha)?.value == brute);
            omega.exact(alpha_pf_dp(&om, &alpha)?.value == crate::skewmat::alpha_det(&a, &alpha)?);
            let split = alpha_pf_dp(&b1, &alpha)?.value * alpha_pf_dp(&b2, &alpha)?.value;
            blockdiag.exact(alpha_pf_dp(&sum, &alpha)?.value == split);
        }
    }
    let mut terms = Probe::new("term_count", "Σ_σ 2^{m-ν(σ)} = (2m-1)!!", 0.0);
    for k in 1..=8usize {
        let double_fact: i64 = (1..=k as i64).map(|i| 2 * i - 1).product();
        terms.exact(cycle_count_poly(k, &2i64.into_scalar()) == double_fact.into_scalar());
    }
    let mut expansion = Probe::new("z_series_expansion", "pf(J - αzB)^{-1/α} = Σ_k z^k/k! Σ_x pf_α(B[x])", 1e-8);
    for alpha in [c(-1.0), c(-0.5), C64::new(0.7, 0.3)] {
        let b: BlockSkewMatrix<C64> = random_skew(m.min(3), &mut r);
        let lhs = pf_expansion_lhs(&b, &alpha, 5)?;
        let rhs = pf_expansion_rhs(&b, &alpha, 5)?;
        // coefficients past z^m vanish at α = -1, so the error is relative to max(|c_k|, 1)
        for k in 0..=5 {
            expansion.err((lhs.coeff(k) - rhs.coeff(k)).norm() / rhs.coeff(k).norm().max(1.0));
        }
    }
    Ok(vec![red.finish(), dp.finish(), avg.finish(), jinv.finish(), omega.finish(), blockdiag.finish(), terms.finish(), expansion.finish()])
}

trait IntoScalar {
    fn into_scalar(self) -> QC;
}

impl IntoScalar for i64 {
    fn into_scalar(self) -> QC {
        QC::from_int(self)
    }
}

fn suite_pointproc(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut r = rng(cfg.seed);
    let mut mass = Probe::new("pfaffian_total_mass", "Σ_X pf(L[X]) = pf(J + L)", 0.0);
    let mut corr_exact = Probe::new("correlation_alpha_minus_one", "ρ(X) = pf(K[X]) at α = -1", 0.0);
    let mut corr_half = Probe::new("correlation_alpha_minus_half", "|ρ(X) - pf_α(K_α[X])| <= tail bound at α = -1/2", 1e-8);
    for i in 0..cfg.samples {
        let bq: BlockSkewMatrix<QC> = random_skew(3, &mut r);
        let total = subset_coefficients(&bq, |x| Ok(x.pfaffian()))?.into_iter().fold(QC::from_int(0), |a, b| a + b);
        mass.exact(total == make_j::<QC>(3).add(&bq)?.pfaffian());
        let l = SkewKernel::from_matrix(bq);
        let minus_one = QC::from_int(-1);
        let k = correlation_kernel(&l, &minus_one)?.k;
        for x in (0..3).powerset() {
            corr_exact.exact(correlation_bruteforce(&l, &minus_one, &x, 0)?.value == k.restrict(&x)?.pfaffian());
        }
        let b: BlockSkewMatrix<C64> = random_skew(2, &mut crate::ensemble::rng(derived_seed(cfg.seed, i as u64)));
        let lf = SkewKernel::from_matrix(b.scale(&c(0.08 / crate::pointproc::max_block_norm(&b))));
        let alpha = c(-0.5);
        let ka = correlation_kernel(&lf, &alpha)?.k;
        for x in [vec![0], vec![1, 0]] {
            let est = correlation_bruteforce(&lf, &alpha, &x, 10)?;
            let exact = alpha_pf_dp(&ka.restrict(&x)?, &alpha)?.value;
            corr_half.err(((est.value - exact).norm() - est.tail_bound).max(0.0));
        }
    }
    Ok(vec![mass.finish(), corr_exact.finish(), corr_half.finish()])
}

fn schur_params() -> Result<Vec<SSParams>> {
    Ok(vec![
        SSParams::new(vec![c(0.3), C64::new(-0.1, 0.15)], vec![c(0.25), C64::new(0.05, -0.2)])?,
        SSParams::new(
            vec![c(0.3), c(-0.2), C64::new(0.1, 0.2), c(0.05)],
            vec![c(0.2), C64::new(-0.15, 0.1), c(0.1), c(-0.25)],
        )?,
    ])
}

fn suite_schur(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut series = Probe::new("series_vs_matrix_kernel", "series kernel = matrix kernel, 1 <= r,s <= 8", 1e-8);
    let mut enumer = Probe::new("rho_vs_enumeration", "|pf(𝒦[λ]) - Σ_{μ ⊇ λ} P_SS(μ)| <= tail", 1e-7);
    let mut cauchy = Probe::new("cauchy_identity", "Σ_λ 2^{-ℓ} Q_λ(u) Q_λ(v) = ∏ (1 + u_i v_j)/(1 - u_i v_j)", 1e-8);
    let mut pfm = Probe::new("pf_m_product", "pf(𝓜) = Z ∏ (u_i - u_j)/(u_i + u_j) ∏ (v_i - v_j)/(v_i + v_j)", 1e-9);
    let mut minv = Probe::new("m_inverse_closed_form", "closed-form 𝓜^{-1} = numeric inverse", 1e-9);
    let mut lpf = Probe::new("l_kernel_pfaffian", "pf(L[{1..n} ∪ λ]) = 2^{-ℓ} Q_λ(u) Q_λ(v) ∏ ratios", 1e-9);
    let mut skew = Probe::new("kernel_skew_condition", "𝒦_ij(r,s) = -𝒦_ji(s,r)", 1e-12);
    for p in schur_params()? {
        let mk = MatrixKernel::new(&p);
        let sk = SeriesKernel::new(&p, cfg.order)?;
        for rr in 1..=8 {
            for ss in 1..=8 {
                if rr + ss + crate::shiftedschur::GUARD_BAND > cfg.order {
                    continue;
                }
                let (a, b) = (mk.block(rr, ss), sk.block(rr, ss)?);
                let t = mk.block(ss, rr);
                for i in 0..2 {
                    for j in 0..2 {
                        series.err((a[i][j] - b[i][j]).norm());
                        skew.err((a[i][j] + t[j][i]).norm());
                    }
                }
            }
        }
        for parts in [vec![1], vec![2], vec![2, 1], vec![3, 1]] {
            let lambda = StrictPartition::new(parts)?;
            let m = rho_ss(&lambda, &p, RhoMethod::Matrix)?;
            let cut = if p.n() <= 2 { 40 } else { 24 };
            let e = rho_ss(&lambda, &p, RhoMethod::BruteForce { weight_cut: cut })?;
            enumer.err(((m.value - e.value).norm() - e.tail_bound).max(0.0));
            let l = build_l(&p, crate::shiftedschur::default_cutoff(&lambda));
            lpf.rel(&l_pfaffian(&l, p.n(), &phi_map(&lambda))?, &l_pfaffian_formula(&lambda, &p)?);
        }
        let sum = cauchy_sum(&p, 40)?;
        cauchy.err(rel_err(&sum.value, &ss_normalizer(&p)));
        pfm.rel(&m_matrix(&p).pfaffian(), &pf_m_product(&p));
        let numeric = m_matrix(&p).as_matrix().inverse()?;
        minv.err(numeric.sub(m_inverse_closed(&p).as_matrix())?.max_abs() / numeric.max_abs());
    }
    let mut positive = Probe::new("measure_positivity", "P_SS(μ) >= 0 for real positive parameters", 0.0);
    let p = SSParams::new(vec![c(0.3), c(0.1)], vec![c(0.2), c(0.25)])?;
    for mu in StrictPartition::up_to(12, 2) {
        let v = ss_probability(&mu, &p)?;
        positive.err((-v.re).max(0.0) + v.im.abs());
    }
    Ok(vec![series.finish(), enumer.finish(), cauchy.finish(), pfm.finish(), minv.finish(), lpf.finish(), skew.finish(), positive.finish()])
}

fn suite_positivity(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let m = cfg.m.clamp(1, 5);
    let mut subsets = Probe::new("subset_pf_nonneg", "pf(B[S]) >= 0 on SH^{>=0}", 0.0);
    let mut hadamard = Probe::new("hadamard_gap", "∏ B_01(r,r) - pf(B) >= 0 on SH^{>0}", 0.0);
    let mut lemma_x = Probe::new("congruence_positive", "pf(ᵗX B X) = ½ tr(-J_1 ᵗX B X) > 0", 1e-10);
    let mut inverse = Probe::new("inverse_adjoint_pd", "(B*)^{-1} ∈ SH^{>0}", 0.0);
    let mut roots = Probe::new("shifted_pf_roots", "roots of z -> pf(zJ - B[S]) are >= 0", 1e-8);
    for i in 0..cfg.samples {
        let seed = derived_seed(cfg.seed, i as u64);
        let psd = random_sh(m, seed, ShiftMode::Psd);
        subsets.err(check_pf_nonneg(&psd)?.violations.len() as f64);
        let pd = random_sh(m, seed ^ 1, ShiftMode::Pd);
        let gap = hadamard_pf(&pd)?;
        hadamard.exact(gap.holds());
        let x = random_s2m2(m, &mut rng(seed ^ 2));
        let (pf, half_trace) = congruence_pf(&pd, &x)?;
        lemma_x.err(rel_err(&pf, &half_trace));
        lemma_x.exact(pf.re > 0.0);
        inverse.exact(inverse_adjoint(&pd)?.is_pd());
        for subset in (0..m.min(4)).powerset().filter(|s| !s.is_empty()) {
            for z in polynomial_roots(&shifted_pf_polynomial(&psd, &subset)?)? {
                roots.err((-z.re).max(0.0) / psd.scale().max(1.0));
            }
        }
    }
    Ok(vec![subsets.finish(), hadamard.finish(), lemma_x.finish(), inverse.finish(), roots.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_at_defaults() {
        let cfg = VerifyConfig { samples: 3, ..VerifyConfig::default() };
        for report in run_all(&cfg).unwrap() {
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn unknown_suite_is_a_parse_error() {
        assert!(matches!(run_suite("nope", &VerifyConfig::default()), Err(Error::Parse(_))));
    }
}
