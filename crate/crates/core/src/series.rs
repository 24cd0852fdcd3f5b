//! Truncated formal power series.
//!
//! [`TruncatedSeries1`] is a power series in `z` kept through `z^N`.
//! [`TruncatedSeries2`] is a bivariate Laurent series in `(z, w)` restricted
//! to the window `-N <= deg_z, deg_w <= N`; kernels of the form
//! `F(z) G(z^{-1}) H(w) K(w^{-1})` times `z^{-k} w^k` expansions fit in this
//! window exactly up to truncation of each factor at order `N`.

use crate::error::{Error, Result};
use crate::skewmat::Scalar;

/// Default truncation order for kernel work.
pub const DEFAULT_ORDER: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries1<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries1<S> {
    /// Series from the given coefficients, padded with zeros or truncated to order `n`.
    pub fn new(mut coeffs: Vec<S>, n: usize) -> Self {
        coeffs.resize(n + 1, S::zero());
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(Vec::new(), n)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(S::one(), n)
    }

    pub fn constant(c: S, n: usize) -> Self {
        Self::new(vec![c], n)
    }

    /// `c z^k` (zero if `k > n`).
    pub fn monomial(k: usize, c: S, n: usize) -> Self {
        let mut s = Self::zero(n);
        if k <= n {
            s.coeffs[k] = c;
        }
        s
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[z^k]`, zero beyond the order.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    fn same_order(&self, other: &Self) -> Result<usize> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(self.order())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.same_order(other)?;
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Substitutes `z -> c z`.
    pub fn rescale_variable(&self, c: &S) -> Self {
        let mut power = S::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let v = a.clone() * power.clone();
                power = power.clone() * c.clone();
                v
            })
            .collect();
        Self { coeffs }
    }

    /// Value of the truncated polynomial at `z`.
    pub fn eval(&self, z: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, a| acc * z.clone() + a.clone())
    }

    /// `1 / s`, needs an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::ConstantTerm("reciprocal needs a nonzero constant term".into()));
        }
        let n = self.order();
        let mut out = vec![S::zero(); n + 1];
        out[0] = S::one() / c0.clone();
        for k in 1..=n {
            let acc = (1..=k).fold(S::zero(), |acc, j| acc + self.coeffs[j].clone() * out[k - j].clone());
            out[k] = -acc / c0.clone();
        }
        Ok(Self { coeffs: out })
    }
}

fn check_constant<S: Scalar>(s: &TruncatedSeries1<S>, want: S, what: &str) -> Result<()> {
    let c0 = s.coeff(0);
    if !(c0.clone() - want).is_negligible(1e-14) {
        return Err(Error::ConstantTerm(format!("{what}, found {}", c0.display())));
    }
    Ok(())
}

/// Formal exponential; the constant term must vanish.
pub fn exp_series<S: Scalar>(s: &TruncatedSeries1<S>) -> Result<TruncatedSeries1<S>> {
    check_constant(s, S::zero(), "exp needs constant term 0")?;
    let n = s.order();
    let mut f = vec![S::zero(); n + 1];
    f[0] = S::one();
    // k f_k = Σ_{j=1}^k j s_j f_{k-j}
    for k in 1..=n {
        let acc = (1..=k).fold(S::zero(), |acc, j| acc + S::from_int(j as i64) * s.coeffs[j].clone() * f[k - j].clone());
        f[k] = acc / S::from_int(k as i64);
    }
    Ok(TruncatedSeries1 { coeffs: f })
}

/// Formal logarithm; the constant term must be 1.
pub fn log_series<S: Scalar>(s: &TruncatedSeries1<S>) -> Result<TruncatedSeries1<S>> {
    check_constant(s, S::one(), "log needs constant term 1")?;
    let n = s.order();
    let mut g = vec![S::zero(); n + 1];
    // k g_k = k s_k - Σ_{j=1}^{k-1} j g_j s_{k-j}
    for k in 1..=n {
        let acc = (1..k).fold(S::zero(), |acc, j| acc + S::from_int(j as i64) * g[j].clone() * s.coeffs[k - j].clone());
        g[k] = s.coeffs[k].clone() - acc / S::from_int(k as i64);
    }
    Ok(TruncatedSeries1 { coeffs: g })
}

/// `s^e` for a series with constant term 1, by the power recurrence
/// `k f_k = Σ_{j=1}^k ((e+1) j - k) s_j f_{k-j}`; no branch is involved.
pub fn power_series<S: Scalar>(s: &TruncatedSeries1<S>, e: &S) -> Result<TruncatedSeries1<S>> {
    check_constant(s, S::one(), "power needs constant term 1")?;
    let n = s.order();
    let mut f = vec![S::zero(); n + 1];
    f[0] = S::one();
    let e1 = e.clone() + S::one();
    for k in 1..=n {
        let acc = (1..=k).fold(S::zero(), |acc, j| {
            let w = e1.clone() * S::from_int(j as i64) - S::from_int(k as i64);
            acc + w * s.coeffs[j].clone() * f[k - j].clone()
        });
        f[k] = acc / S::from_int(k as i64);
    }
    Ok(TruncatedSeries1 { coeffs: f })
}

/// `Q_u(z) = ∏_j (1 + u_j z) / (1 - u_j z)` through `z^n`.
pub fn q_gen<S: Scalar>(u: &[S], n: usize) -> TruncatedSeries1<S> {
    let mut acc = TruncatedSeries1::one(n);
    for uj in u {
        // (1 + u z)/(1 - u z) = 1 + 2 Σ_{k>=1} u^k z^k
        let mut factor = vec![S::one(); n + 1];
        let mut p = S::one();
        for c in factor.iter_mut().skip(1) {
            p = p * uj.clone();
            *c = S::from_int(2) * p.clone();
        }
        acc = acc.mul(&TruncatedSeries1 { coeffs: factor }).expect("same order");
    }
    acc
}

/// `∏_j (1 - u_j z) / (1 + u_j z) = 1 / Q_u(z)`.
pub fn q_gen_reciprocal<S: Scalar>(u: &[S], n: usize) -> TruncatedSeries1<S> {
    let neg: Vec<S> = u.iter().map(|x| -x.clone()).collect();
    q_gen(&neg, n)
}

/// Coefficients `c_0..c_d` of the polynomial of degree `d = xs.len() - 1`
/// through the points `(xs[i], ys[i])` (Newton divided differences).
pub fn interpolate<S: Scalar>(xs: &[S], ys: &[S]) -> Result<Vec<S>> {
    if xs.len() != ys.len() || xs.is_empty() {
        return Err(Error::DimensionMismatch("interpolation needs equally many (nonzero) nodes and values".into()));
    }
    let d = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..d {
        for i in (level..d).rev() {
            let den = xs[i].clone() - xs[i - level].clone();
            if den.is_zero() {
                return Err(Error::DegenerateParameters("repeated interpolation node".into()));
            }
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / den;
        }
    }
    // expand Newton form into monomial coefficients
    let mut poly = vec![S::zero(); d];
    for i in (0..d).rev() {
        // poly = poly * (z - x_i) + dd[i]
        let mut next = vec![S::zero(); d];
        for k in 0..d {
            if poly[k].is_zero() {
                continue;
            }
            if k + 1 < d {
                next[k + 1] = next[k + 1].clone() + poly[k].clone();
            }
            next[k] = next[k].clone() - poly[k].clone() * xs[i].clone();
        }
        next[0] = next[0].clone() + dd[i].clone();
        poly = next;
    }
    Ok(poly)
}

/// Bivariate Laurent series in `(z, w)` with both exponents in `[-N, N]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries2<S> {
    n: usize,
    // index (i + N) * (2N + 1) + (j + N) holds [z^i w^j]
    coeffs: Vec<S>,
}

impl<S: Scalar> TruncatedSeries2<S> {
    pub fn zero(n: usize) -> Self {
        let side = 2 * n + 1;
        Self { n, coeffs: vec![S::zero(); side * side] }
    }

    pub fn one(n: usize) -> Self {
        let mut s = Self::zero(n);
        s.set(0, 0, S::one());
        s
    }

    /// `c z^i w^j`; silently zero outside the window.
    pub fn monomial(i: i64, j: i64, c: S, n: usize) -> Self {
        let mut s = Self::zero(n);
        if s.in_window(i, j) {
            s.set(i, j, c);
        }
        s
    }

    /// Coefficients given by `f(i, j)` on the whole window.
    pub fn from_fn(n: usize, mut f: impl FnMut(i64, i64) -> S) -> Self {
        let mut s = Self::zero(n);
        let ni = n as i64;
        for i in -ni..=ni {
            for j in -ni..=ni {
                s.set(i, j, f(i, j));
            }
        }
        s
    }

    /// Embeds `f(z)` (`inverse = false`) or `f(z^{-1})` (`inverse = true`).
    pub fn from_z(f: &TruncatedSeries1<S>, inverse: bool) -> Self {
        Self::from_univariate(f, inverse, true)
    }

    /// Embeds `f(w)` or `f(w^{-1})`.
    pub fn from_w(f: &TruncatedSeries1<S>, inverse: bool) -> Self {
        Self::from_univariate(f, inverse, false)
    }

    fn from_univariate(f: &TruncatedSeries1<S>, inverse: bool, in_z: bool) -> Self {
        let n = f.order();
        let mut s = Self::zero(n);
        for (k, c) in f.coeffs().iter().enumerate() {
            let e = if inverse { -(k as i64) } else { k as i64 };
            if in_z {
                s.set(e, 0, c.clone());
            } else {
                s.set(0, e, c.clone());
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn in_window(&self, i: i64, j: i64) -> bool {
        let n = self.n as i64;
        (-n..=n).contains(&i) && (-n..=n).contains(&j)
    }

    fn index(&self, i: i64, j: i64) -> usize {
        let n = self.n as i64;
        ((i + n) * (2 * n + 1) + (j + n)) as usize
    }

    fn set(&mut self, i: i64, j: i64, c: S) {
        let k = self.index(i, j);
        self.coeffs[k] = c;
    }

    /// `[z^i w^j]`; zero outside the window.
    pub fn coeff(&self, i: i64, j: i64) -> S {
        if self.in_window(i, j) {
            self.coeffs[self.index(i, j)].clone()
        } else {
            S::zero()
        }
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::OrderMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self { n: self.n, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(Self { n: self.n, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect() })
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    fn support(&self) -> Vec<(i64, i64, S)> {
        let n = self.n as i64;
        let side = 2 * n + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 / side - n, k as i64 % side - n, c.clone()))
            .collect()
    }

    /// Product with terms leaving the window dropped.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let (a, b) = (self.support(), other.support());
        let mut out = Self::zero(self.n);
        for (i1, j1, c1) in &a {
            for (i2, j2, c2) in &b {
                let (i, j) = (i1 + i2, j1 + j2);
                if out.in_window(i, j) {
                    let k = out.index(i, j);
                    out.coeffs[k] = out.coeffs[k].clone() + c1.clone() * c2.clone();
                }
            }
        }
        Ok(out)
    }
}

/// Geometric truncation estimate `C ρ^{N + 1 - r - s}` for a coefficient
/// `[z^r w^s]` of a product whose factors decay like `ρ^k`.
pub fn tail_estimate(order: usize, r: usize, s: usize, rho: f64, constant: f64) -> f64 {
    let exponent = order as i64 + 1 - r as i64 - s as i64;
    if exponent <= 0 {
        return f64::INFINITY;
    }
    constant * rho.powi(exponent as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skewmat::{rel_err, C64, QC};

    fn q(n: i64, d: i64) -> QC {
        QC::from_ratio(n, d)
    }

    fn poly(c: &[i64], n: usize) -> TruncatedSeries1<QC> {
        TruncatedSeries1::new(c.iter().map(|&x| QC::from_int(x)).collect(), n)
    }

    #[test]
    fn ring_basics() {
        let p = poly(&[1, 1], 2).mul(&poly(&[1, -1], 2)).unwrap();
        assert_eq!(p, poly(&[1, 0, -1], 2));
        assert!(matches!(poly(&[1], 2).mul(&poly(&[1], 3)), Err(Error::OrderMismatch { left: 2, right: 3 })));
    }

    #[test]
    fn exp_of_z_and_log_roundtrip() {
        let e = exp_series(&poly(&[0, 1], 6)).unwrap();
        let mut fact = 1i64;
        for k in 0..=6 {
            if k > 0 {
                fact *= k;
            }
            assert_eq!(e.coeff(k as usize), q(1, fact));
        }
        assert_eq!(exp_series(&TruncatedSeries1::<QC>::zero(4)).unwrap(), TruncatedSeries1::one(4));
        let one_plus_z = poly(&[1, 1], 6);
        assert_eq!(exp_series(&log_series(&one_plus_z).unwrap()).unwrap(), one_plus_z);
        assert!(matches!(exp_series(&poly(&[1, 1], 3)), Err(Error::ConstantTerm(_))));
        assert!(matches!(log_series(&poly(&[2, 1], 3)), Err(Error::ConstantTerm(_))));
    }

    #[test]
    fn powers() {
        let s = poly(&[1, 1], 8);
        assert_eq!(power_series(&s, &QC::from_int(2)).unwrap(), poly(&[1, 2, 1], 8));
        let geo = power_series(&poly(&[1, -1], 8), &QC::from_int(-1)).unwrap();
        assert!(geo.coeffs().iter().all(|c| *c == QC::from_int(1)));
        let half = power_series(&s, &q(1, 2)).unwrap();
        assert_eq!(half.mul(&half).unwrap(), s);
        assert!(power_series(&poly(&[3], 2), &q(1, 2)).is_err());
    }

    #[test]
    fn power_agrees_with_exp_log() {
        let s = TruncatedSeries1::new(vec![C64::new(1.0, 0.0), C64::new(0.3, -0.2), C64::new(-0.1, 0.4)], 10);
        let e = C64::new(0.7, 0.3);
        let direct = power_series(&s, &e).unwrap();
        let via = exp_series(&log_series(&s).unwrap().scale(&e)).unwrap();
        for k in 0..=10 {
            assert!((direct.coeff(k) - via.coeff(k)).norm() < 1e-12);
        }
    }

    #[test]
    fn q_gen_values() {
        assert_eq!(q_gen::<QC>(&[], 5), TruncatedSeries1::one(5));
        let single = q_gen(&[q(3, 10)], 4);
        assert_eq!(single.coeff(2), q(18, 100));
        assert_eq!(single.coeff(3), QC::from_int(2) * q(27, 1000));
        let u = [q(1, 3), q(-1, 5)];
        let prod = q_gen(&u, 7).mul(&q_gen_reciprocal(&u, 7)).unwrap();
        assert_eq!(prod, TruncatedSeries1::one(7));
        let r = q_gen(&u, 7).reciprocal().unwrap();
        assert_eq!(r, q_gen_reciprocal(&u, 7));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let c = [q(1, 2), q(-3, 1), q(0, 1), q(5, 7)];
        let p = TruncatedSeries1::new(c.to_vec(), 3);
        let xs: Vec<QC> = (0..4).map(QC::from_int).collect();
        let ys: Vec<QC> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys).unwrap(), c.to_vec());
    }

    #[test]
    fn laurent_window() {
        let zi = TruncatedSeries2::monomial(-1, 0, QC::from_int(1), 1);
        let w = TruncatedSeries2::monomial(0, 1, QC::from_int(1), 1);
        let p = zi.mul(&w).unwrap();
        assert_eq!(p.coeff(-1, 1), QC::from_int(1));
        let out = TruncatedSeries2::monomial(1, 1, QC::from_int(1), 1).mul(&TruncatedSeries2::monomial(1, 0, QC::from_int(1), 1)).unwrap();
        assert_eq!(out, TruncatedSeries2::zero(1));
        assert_eq!(out.coeff(7, 7), QC::from_int(0));
    }

    #[test]
    fn bivariate_embedding_commutes() {
        let f = q_gen(&[C64::new(0.3, 0.0)], 6);
        let g = q_gen_reciprocal(&[C64::new(0.2, 0.1)], 6);
        let a = TruncatedSeries2::from_z(&f, false).mul(&TruncatedSeries2::from_w(&g, true)).unwrap();
        let b = TruncatedSeries2::from_w(&g, true).mul(&TruncatedSeries2::from_z(&f, false)).unwrap();
        assert_eq!(a, b);
        assert!(rel_err(&a.coeff(2, -3), &(f.coeff(2) * g.coeff(3))) < 1e-15);
    }
}
