//! The SH class of skew matrices (those with `-J_m B` hermitian), the
//! positivity results on it, and an ensemble scanner for the range of α
//! with `pf_α(B) >= 0`.
//!
//! Ensembles draw every free block entry as a complex standard normal
//! (diagonal `B_01(r,r)` as a real standard normal) before the SH
//! symmetrization and the optional shift towards `SH^{>=0}` / `SH^{>0}`.
//! Scan conclusions are relative to that distribution.

use std::fmt;
use std::fmt::Write as _;

use itertools::Itertools;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::alphapf::{alpha_pf_dp, diagonal_product};
use crate::ensemble::{complex_normal, derived_seed, rng};
use crate::error::{Error, Result};
use crate::pointproc::{correlation_kernel, SkewKernel};
use crate::series::interpolate;
use crate::skewmat::{make_j, BlockSkewMatrix, Matrix, C64};

/// Relative tolerance of the block symmetry test.
pub const SH_TOL: f64 = 1e-12;
/// Eigenvalue certification tolerance, relative to `‖H‖`.
pub const EIG_TOL: f64 = 1e-10;
/// Largest `m` for the subset and scan routines.
pub const SUBSET_MAX_M: usize = 8;
pub const SCAN_MAX_M: usize = 7;
/// Extra shift added on top of `-λ_min(H)` by [`ShiftMode::Pd`].
pub const PD_MARGIN: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ShClass {
    General,
    Psd,
    Pd,
}

impl fmt::Display for ShClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShClass::General => "general",
            ShClass::Psd => "psd",
            ShClass::Pd => "pd",
        })
    }
}

/// A matrix of the SH class together with its hermitian companion
/// `H = -J_m B` and the eigenvalue certificate.
#[derive(Clone, Debug)]
pub struct SHMatrix {
    b: BlockSkewMatrix<C64>,
    h: Matrix<C64>,
    eigenvalues: Vec<f64>,
    class: ShClass,
}

impl SHMatrix {
    pub fn matrix(&self) -> &BlockSkewMatrix<C64> {
        &self.b
    }

    pub fn companion(&self) -> &Matrix<C64> {
        &self.h
    }

    /// Eigenvalues of `H`, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    /// `‖H‖ = max |λ|`.
    pub fn scale(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |a, x| a.max(x.abs()))
    }

    pub fn class(&self) -> ShClass {
        self.class
    }

    pub fn is_psd(&self) -> bool {
        self.class >= ShClass::Psd
    }

    pub fn is_pd(&self) -> bool {
        self.class == ShClass::Pd
    }

    pub fn m(&self) -> usize {
        self.b.m()
    }

    fn certify(b: BlockSkewMatrix<C64>) -> Self {
        let j = make_j::<C64>(b.m());
        let h = j.as_matrix().mul(b.as_matrix()).expect("square").scale(&C64::new(-1.0, 0.0));
        let hs = h.conj_transpose().add(&h).expect("square").scale(&C64::new(0.5, 0.0));
        let mut eigenvalues: Vec<f64> = if hs.rows() == 0 {
            Vec::new()
        } else {
            hs.to_nalgebra().symmetric_eigen().eigenvalues.iter().copied().collect()
        };
        eigenvalues.sort_by(f64::total_cmp);
        let scale = eigenvalues.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
        let lmin = eigenvalues.first().copied().unwrap_or(0.0);
        let class = if lmin > EIG_TOL * scale {
            ShClass::Pd
        } else if lmin >= -EIG_TOL * scale {
            ShClass::Psd
        } else {
            ShClass::General
        };
        Self { b, h, eigenvalues, class }
    }
}

/// Largest violation of `B_00 = conj(B_11)`, `B_01 = -conj(B_10)` within block `(r, s)`.
fn block_sh_deviation(b: &BlockSkewMatrix<C64>, r: usize, s: usize) -> f64 {
    let [[b00, b01], [b10, b11]] = b.block(r, s);
    (b00 - b11.conj()).norm().max((b01 + b10.conj()).norm())
}

/// Checks the SH symmetry and classifies `-J_m B` by its spectrum.
pub fn classify_sh(b: &BlockSkewMatrix<C64>) -> Result<SHMatrix> {
    let tol = SH_TOL * b.as_matrix().max_abs().max(1.0);
    for r in 0..b.m() {
        for s in 0..b.m() {
            let deviation = block_sh_deviation(b, r, s);
            if deviation > tol {
                return Err(Error::NotSH { r: r + 1, s: s + 1, deviation });
            }
        }
    }
    Ok(SHMatrix::certify(b.clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftMode {
    None,
    Psd,
    Pd,
}

impl std::str::FromStr for ShiftMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(ShiftMode::None),
            "psd" => Ok(ShiftMode::Psd),
            "pd" => Ok(ShiftMode::Pd),
            other => Err(Error::Parse(format!("unknown shift mode {other:?} (none, psd, pd)"))),
        }
    }
}

/// A random SH block: `[[z, w], [-conj(w), conj(z)]]` off the diagonal,
/// `[[0, b], [-b, 0]]` with real `b` on it.
fn random_sh_blocks<R: Rng + ?Sized>(m: usize, rng: &mut R) -> BlockSkewMatrix<C64> {
    BlockSkewMatrix::from_blocks(m, |r, s| {
        let zero = C64::new(0.0, 0.0);
        if r == s {
            let x: f64 = rng.sample(StandardNormal);
            [[zero, C64::new(x, 0.0)], [C64::new(-x, 0.0), zero]]
        } else {
            let z = complex_normal(rng);
            let w = complex_normal(rng);
            [[z, w], [-w.conj(), z.conj()]]
        }
    })
}

/// Seeded SH ensemble member. The psd / pd modes shift `B <- B + t J_m`
/// (so `H <- H + tI`) with `t = -λ_min(H)`, plus [`PD_MARGIN`] for pd.
pub fn random_sh(m: usize, seed: u64, mode: ShiftMode) -> SHMatrix {
    let mut r = rng(seed);
    let b = random_sh_blocks(m, &mut r);
    let raw = SHMatrix::certify(b);
    let t = match mode {
        ShiftMode::None => return raw,
        ShiftMode::Psd => -raw.lambda_min(),
        ShiftMode::Pd => -raw.lambda_min() + PD_MARGIN,
    };
    let shifted = raw.b.add(&make_j::<C64>(m).scale(&C64::new(t, 0.0))).expect("same shape");
    let mut out = SHMatrix::certify(shifted);
    // The exact shift puts λ_min on zero; rounding may leave it a hair below.
    if mode == ShiftMode::Psd && out.class == ShClass::General && out.lambda_min() >= -1e-9 * out.scale() {
        out.class = ShClass::Psd;
    }
    out
}

/// `ω(A)` for hermitian `A`, certified.
pub fn omega_hermitian(a: &Matrix<C64>) -> Result<SHMatrix> {
    classify_sh(&crate::alphapf::omega_embed(a)?)
}

fn require(b: &SHMatrix, class: ShClass, what: &str) -> Result<()> {
    if b.class < class {
        return Err(Error::Precondition(format!(
            "{what} needs an {class} SH matrix, got {} (λ_min = {:e})",
            b.class,
            b.lambda_min()
        )));
    }
    Ok(())
}

/// A subset whose pfaffian fails the non-negativity test.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsetViolation {
    /// 1-based block indices.
    pub subset: Vec<usize>,
    pub value: C64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubsetReport {
    pub checked: usize,
    pub min_re: f64,
    pub max_abs_im: f64,
    pub violations: Vec<SubsetViolation>,
}

impl SubsetReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `pf(B[S])` for every `S ⊆ {1..m}`; each must be a non-negative real up
/// to `1e-10 · max(1, ‖H‖)^{#S}`.
pub fn check_pf_nonneg(b: &SHMatrix) -> Result<SubsetReport> {
    require(b, ShClass::Psd, "subset pfaffian check")?;
    let m = b.m();
    if m > SUBSET_MAX_M {
        return Err(Error::TooLarge { what: "m", size: m, limit: SUBSET_MAX_M });
    }
    let unit = b.scale().max(1.0);
    let mut report = SubsetReport { checked: 0, min_re: f64::INFINITY, max_abs_im: 0.0, violations: Vec::new() };
    for subset in (0..m).powerset() {
        let v = b.b.submatrix(&subset)?.pfaffian();
        let tol = EIG_TOL * unit.powi(subset.len() as i32);
        report.checked += 1;
        report.min_re = report.min_re.min(v.re);
        report.max_abs_im = report.max_abs_im.max(v.im.abs());
        if v.re < -tol || v.im.abs() > tol {
            report.violations.push(SubsetViolation { subset: subset.iter().map(|x| x + 1).collect(), value: v });
        }
    }
    Ok(report)
}

/// Both sides of `∏_r B_01(r,r) >= pf(B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HadamardGap {
    pub lhs: f64,
    pub rhs: C64,
    pub gap: f64,
    /// Round-off allowance `1e-10 · max(1, ‖H‖)^m`.
    pub tolerance: f64,
}

impl HadamardGap {
    pub fn holds(&self) -> bool {
        self.gap >= -self.tolerance && self.rhs.im.abs() <= self.tolerance
    }

    pub fn is_equality(&self) -> bool {
        self.gap.abs() <= self.tolerance
    }
}

pub fn hadamard_pf(b: &SHMatrix) -> Result<HadamardGap> {
    require(b, ShClass::Pd, "the Hadamard-type inequality")?;
    let lhs = diagonal_product(&b.b).re;
    let rhs = b.b.pfaffian();
    let tolerance = EIG_TOL * b.scale().max(1.0).powi(b.m() as i32);
    Ok(HadamardGap { lhs, rhs, gap: lhs - rhs.re, tolerance })
}

/// Evidence that `-J K_α` is hermitian and non-negative, with
/// `K_α = L (I + αJL)^{-1}`.
#[derive(Clone, Debug)]
pub struct TransportCertificate {
    pub kernel: BlockSkewMatrix<C64>,
    pub hermitian_deviation: f64,
    pub lambda_min: f64,
    pub scale: f64,
}

impl TransportCertificate {
    pub fn certified(&self) -> bool {
        let tol = EIG_TOL * self.scale.max(1.0);
        self.hermitian_deviation <= tol && self.lambda_min >= -tol
    }
}

pub fn kernel_psd_transport(l: &SkewKernel<C64>, alpha: f64) -> Result<TransportCertificate> {
    let sh = classify_sh(l.matrix())?;
    require(&sh, ShClass::Psd, "PSD transport")?;
    let norm = l.matrix().as_matrix().operator_norm() * alpha.abs();
    if norm >= 1.0 {
        return Err(Error::Precondition(format!("‖αL‖ = {norm:.6} must be below 1")));
    }
    let k = correlation_kernel(l, &C64::new(alpha, 0.0))?.k_tilde.matrix().clone();
    let j = make_j::<C64>(k.m());
    let kh = j.as_matrix().mul(k.as_matrix())?.scale(&C64::new(-1.0, 0.0));
    let hermitian_deviation = kh.sub(&kh.conj_transpose())?.max_abs();
    let mut eig: Vec<f64> = if kh.rows() == 0 {
        Vec::new()
    } else {
        let sym = kh.add(&kh.conj_transpose())?.scale(&C64::new(0.5, 0.0));
        sym.to_nalgebra().symmetric_eigen().eigenvalues.iter().copied().collect()
    };
    eig.sort_by(f64::total_cmp);
    let scale = eig.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    Ok(TransportCertificate { kernel: k, hermitian_deviation, lambda_min: eig.first().copied().unwrap_or(0.0), scale })
}

/// A random `2m x 2` matrix whose 2x2 blocks lie in `SH_2`.
pub fn random_s2m2<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Matrix<C64> {
    let mut x = Matrix::zeros(2 * m, 2);
    for r in 0..m {
        let z = complex_normal(rng);
        let w = complex_normal(rng);
        x[(2 * r, 0)] = z;
        x[(2 * r, 1)] = w;
        x[(2 * r + 1, 0)] = -w.conj();
        x[(2 * r + 1, 1)] = z.conj();
    }
    x
}

/// `pf(ᵗX B X)` and `½ tr(-J_1 ᵗX B X)` for `X` with SH_2 blocks.
pub fn congruence_pf(b: &SHMatrix, x: &Matrix<C64>) -> Result<(C64, C64)> {
    if x.rows() != b.b.dim() || x.cols() != 2 {
        return Err(Error::DimensionMismatch(format!("X must be {}x2, got {}x{}", b.b.dim(), x.rows(), x.cols())));
    }
    for r in 0..b.m() {
        let dev = (x[(2 * r, 0)] - x[(2 * r + 1, 1)].conj())
            .norm()
            .max((x[(2 * r, 1)] + x[(2 * r + 1, 0)].conj()).norm());
        if dev > SH_TOL * x.max_abs().max(1.0) {
            return Err(Error::NotSH { r: r + 1, s: 1, deviation: dev });
        }
    }
    let c = x.transpose().mul(b.b.as_matrix())?.mul(x)?;
    let j1 = make_j::<C64>(1);
    let half_trace = j1.as_matrix().mul(&c)?.trace()? * C64::new(-0.5, 0.0);
    Ok((c[(0, 1)], half_trace))
}

/// `(B*)^{-1}`, classified.
pub fn inverse_adjoint(b: &SHMatrix) -> Result<SHMatrix> {
    let inv = b.b.as_matrix().conj_transpose().inverse()?;
    classify_sh(&BlockSkewMatrix::antisymmetrized(&inv)?)
}

/// Coefficients (ascending) of `z -> pf(z J_n - B[S])`, by interpolation at `z = 0..n`.
pub fn shifted_pf_polynomial(b: &SHMatrix, subset: &[usize]) -> Result<Vec<C64>> {
    let sub = b.b.submatrix(subset)?;
    let n = sub.m();
    let j = make_j::<C64>(n);
    let xs: Vec<C64> = (0..=n).map(|z| C64::new(z as f64, 0.0)).collect();
    let ys: Vec<C64> = xs.iter().map(|z| j.scale(z).sub(&sub).map(|t| t.pfaffian())).collect::<Result<_>>()?;
    interpolate(&xs, &ys)
}

/// Roots of a polynomial (ascending coefficients) from its companion matrix.
pub fn polynomial_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let deg = coeffs.iter().rposition(|c| c.norm() > 0.0).unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let companion = nalgebra::DMatrix::<C64>::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    companion
        .schur()
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
        .ok_or_else(|| Error::NonConvergent("companion eigenvalues".into()))
}

/// One row of an α scan.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub alpha: f64,
    pub min_re: f64,
    pub max_abs_im: f64,
    pub violations: usize,
    /// Ensemble index of the sample attaining `min_re`.
    pub witness_id: usize,
    pub witness: BlockSkewMatrix<C64>,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub m: usize,
    pub samples: usize,
    pub seed: u64,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn row(&self, alpha: f64) -> Option<&ScanRow> {
        self.rows.iter().find(|r| (r.alpha - alpha).abs() < 1e-12)
    }

    /// CSV with header `alpha,min_re,max_abs_im,violations,witness_id`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,min_re,max_abs_im,violations,witness_id\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{:e},{:e},{},{}", r.alpha, r.min_re, r.max_abs_im, r.violations, r.witness_id);
        }
        out
    }

    /// One line per α; never claims more than the sample shows.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "m = {}, {} psd samples (complex standard normal blocks, shifted to λ_min = 0), seed {}\n",
            self.m, self.samples, self.seed
        );
        for r in &self.rows {
            let verdict = if r.violations == 0 {
                format!("no violation found in {} samples", self.samples)
            } else {
                format!("{} violations in {} samples (witness #{})", r.violations, self.samples, r.witness_id)
            };
            let _ = writeln!(out, "alpha = {:>8.4}: min Re = {:+.6e}, {verdict}", r.alpha, r.min_re);
        }
        out
    }
}

/// Parses `lo:hi:step` into an inclusive grid.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Error::Parse(format!("alpha grid {text:?} must look like lo:hi:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>().map_err(|_| bad())).collect::<Result<_>>()?;
    let (lo, hi, step) = (v[0], v[1], v[2]);
    if !(step > 0.0) || hi < lo {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|k| round_grid(lo + k as f64 * step)).collect())
}

fn round_grid(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// Round-off allowance for `pf_α(B)` with `‖H‖ <= scale`.
fn scan_tolerance(scale: f64, m: usize, alpha: f64) -> f64 {
    let growth: f64 = (0..m).map(|j| 1.0 + alpha.abs() * j as f64).product();
    EIG_TOL * scale.max(1.0).powi(m as i32) * growth
}

/// Minimum of `Re pf_α(B)` over a seeded psd ensemble, per grid point.
/// Sample `i` uses the seed `derived_seed(seed, i)`, so the report does not
/// depend on the thread count.
pub fn alpha_scan(m: usize, samples: usize, grid: &[f64], seed: u64) -> Result<ScanReport> {
    if m == 0 || m > SCAN_MAX_M {
        return Err(Error::TooLarge { what: "m", size: m, limit: SCAN_MAX_M });
    }
    if samples == 0 {
        return Err(Error::Precondition("the ensemble needs at least one sample".into()));
    }
    let values: Vec<(SHMatrix, Vec<C64>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let b = random_sh(m, derived_seed(seed, i as u64), ShiftMode::Psd);
            let vals = grid
                .iter()
                .map(|&a| alpha_pf_dp(&b.b, &C64::new(a, 0.0)).map(|r| r.value))
                .collect::<Result<Vec<_>>>()?;
            Ok((b, vals))
        })
        .collect::<Result<_>>()?;
    let rows = grid
        .iter()
        .enumerate()
        .map(|(g, &alpha)| {
            let mut row = ScanRow {
                alpha,
                min_re: f64::INFINITY,
                max_abs_im: 0.0,
                violations: 0,
                witness_id: 0,
                witness: values[0].0.b.clone(),
            };
            for (i, (b, vals)) in values.iter().enumerate() {
                let v = vals[g];
                let tol = scan_tolerance(b.scale(), m, alpha);
                if v.re < -tol || v.im.abs() > tol {
                    row.violations += 1;
                }
                row.max_abs_im = row.max_abs_im.max(v.im.abs());
                if v.re < row.min_re {
                    row.min_re = v.re;
                    row.witness_id = i;
                    row.witness = b.b.clone();
                }
            }
            row
        })
        .collect();
    Ok(ScanReport { m, samples, seed, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::random_matrix;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn hermitian_psd(m: usize, seed: u64) -> Matrix<C64> {
        let g: Matrix<C64> = random_matrix(m, m, &mut rng(seed));
        g.mul(&g.conj_transpose()).unwrap()
    }

    #[test]
    fn j_is_pd_with_identity_companion() {
        let s = classify_sh(&make_j::<C64>(3)).unwrap();
        assert_eq!(s.class(), ShClass::Pd);
        assert!(s.companion().sub(&Matrix::identity(6)).unwrap().max_abs() < 1e-15);
        let r = check_pf_nonneg(&s).unwrap();
        assert_eq!(r.checked, 8);
        assert!(r.passed());
        assert!((r.min_re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_broken_block() {
        let mut b = random_sh(3, 5, ShiftMode::None).matrix().as_matrix().clone();
        b[(0, 2)] += c(0.5);
        b[(2, 0)] -= c(0.5);
        let err = classify_sh(&BlockSkewMatrix::new(b).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotSH { r: 1, s: 2, .. }), "{err}");
    }

    #[test]
    fn omega_of_psd_hermitian_minors() {
        let a = hermitian_psd(4, 11);
        let s = omega_hermitian(&a).unwrap();
        assert!(s.is_psd());
        for subset in (0..4).powerset() {
            let pf = s.matrix().submatrix(&subset).unwrap().pfaffian();
            let det = a.principal(&subset).unwrap().det().unwrap();
            assert!((pf - det).norm() < 1e-9 * det.norm().max(1.0));
        }
        assert!(check_pf_nonneg(&s).unwrap().passed());
    }

    #[test]
    fn shift_modes() {
        let pd = random_sh(4, 3, ShiftMode::Pd);
        assert!(pd.is_pd());
        assert!((pd.lambda_min() - PD_MARGIN).abs() < 1e-9);
        assert!(random_sh(4, 3, ShiftMode::Psd).is_psd());
        let none = random_sh(4, 3, ShiftMode::None);
        assert_eq!(none.class(), ShClass::General);
        assert_eq!(random_sh(4, 3, ShiftMode::Pd).matrix(), pd.matrix());
    }

    #[test]
    fn hadamard_equality_and_determinant_case() {
        let diag = BlockSkewMatrix::from_blocks(3, |r, s| {
            let x = if r == s { c(1.0 + r as f64) } else { c(0.0) };
            [[c(0.0), x], [-x, c(0.0)]]
        });
        let g = hadamard_pf(&classify_sh(&diag).unwrap()).unwrap();
        assert!(g.is_equality());
        let a = hermitian_psd(3, 2).add(&Matrix::identity(3)).unwrap();
        let g = hadamard_pf(&omega_hermitian(&a).unwrap()).unwrap();
        let det = a.det().unwrap().re;
        let diag_prod: f64 = (0..3).map(|i| a[(i, i)].re).product();
        assert!((g.rhs.re - det).abs() < 1e-9 * det);
        assert!((g.lhs - diag_prod).abs() < 1e-9 * diag_prod);
        assert!(g.holds() && g.gap > 0.0);
    }

    #[test]
    fn transport_scalar_case() {
        let cc = 0.3;
        let l = SkewKernel::from_matrix(make_j::<C64>(2).scale(&c(cc)));
        for alpha in [-1.0, 0.5, 2.0] {
            let cert = kernel_psd_transport(&l, alpha).unwrap();
            assert!(cert.certified());
            assert!((cert.lambda_min - cc / (1.0 - alpha * cc)).abs() < 1e-12);
        }
        let zero = SkewKernel::from_matrix(BlockSkewMatrix::<C64>::zeros(2));
        assert!(kernel_psd_transport(&zero, 0.5).unwrap().certified());
        assert!(kernel_psd_transport(&l, 4.0).is_err());
    }

    #[test]
    fn congruence_and_inverse_lemmas() {
        let b = random_sh(3, 21, ShiftMode::Pd);
        let mut r = rng(4);
        let x = random_s2m2(3, &mut r);
        let (pf, half_trace) = congruence_pf(&b, &x).unwrap();
        assert!((pf - half_trace).norm() < 1e-10 * pf.norm());
        assert!(pf.re > 0.0 && pf.im.abs() < 1e-10 * pf.re);
        assert!(inverse_adjoint(&b).unwrap().is_pd());
    }

    #[test]
    fn shifted_pf_roots_are_eigenvalues() {
        let b = random_sh(3, 8, ShiftMode::Psd);
        let coeffs = shifted_pf_polynomial(&b, &[0, 1, 2]).unwrap();
        assert!((coeffs[3] - c(1.0)).norm() < 1e-9);
        let mut roots: Vec<f64> = polynomial_roots(&coeffs).unwrap().iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        let eig = b.eigenvalues();
        for (k, root) in roots.iter().enumerate() {
            assert!((root - eig[2 * k]).abs() < 1e-6, "{roots:?} vs {eig:?}");
        }
    }

    #[test]
    fn scan_guaranteed_columns_and_determinism() {
        let grid = parse_grid("-1:0:0.5").unwrap();
        assert_eq!(grid, vec![-1.0, -0.5, 0.0]);
        let a = alpha_scan(3, 40, &grid, 42).unwrap();
        assert_eq!(a.row(-1.0).unwrap().violations, 0);
        assert_eq!(a.row(0.0).unwrap().violations, 0);
        let b = alpha_scan(3, 40, &grid, 42).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.to_csv().starts_with("alpha,min_re,max_abs_im,violations,witness_id\n"));
        let row = a.row(-1.0).unwrap();
        assert_eq!(alpha_pf_dp(&row.witness, &c(-1.0)).unwrap().value.re, row.min_re);
    }
}
