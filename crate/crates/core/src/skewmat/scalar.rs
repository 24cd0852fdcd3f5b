//! Scalar field abstraction.
//!
//! Two concrete fields are supported: [`C64`] (complex double precision) and
//! [`QC`] (complex numbers with arbitrary-precision rational parts). Every
//! combinatorial routine in the crate is generic over [`Scalar`], so identity
//! checks on rational inputs run with no rounding at all.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_complex::Complex64 as C64;

/// Complex number with exact rational real and imaginary parts.
pub type QC = Complex<BigRational>;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Converts a floating complex value. Exact fields take the exact binary value.
    fn from_c64(z: C64) -> Self;

    fn to_c64(&self) -> C64;

    /// Builds `re + i·im` from exact rationals (floats round to nearest).
    fn from_rational_parts(re: &BigRational, im: &BigRational) -> Self;

    /// Human-readable value: `a+bi` with exact fractions in exact mode.
    fn display(&self) -> String;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn conj(&self) -> Self;

    /// Principal power `self^e`; `None` when the field cannot represent it.
    fn powc(&self, e: &Self) -> Option<Self>;

    /// Returns `Some(k)` when the value is (numerically, for floats) the real integer `k`.
    fn as_integer(&self) -> Option<i64>;

    /// Tolerance-aware zero test: exact fields compare with zero, floats with `tol`.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        C64::new(num as f64 / den as f64, 0.0)
    }

    fn from_c64(z: C64) -> Self {
        z
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn from_rational_parts(re: &BigRational, im: &BigRational) -> Self {
        C64::new(re.to_f64().unwrap_or(f64::NAN), im.to_f64().unwrap_or(f64::NAN))
    }

    fn display(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else if self.im < 0.0 {
            format!("{}-{}i", self.re, -self.im)
        } else {
            format!("{}+{}i", self.re, self.im)
        }
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn powc(&self, e: &Self) -> Option<Self> {
        Some(Complex::powc(*self, *e))
    }

    fn as_integer(&self) -> Option<i64> {
        let r = self.re.round();
        let scale = self.norm().max(1.0);
        if (self.re - r).abs() <= 1e-12 * scale && self.im.abs() <= 1e-12 * scale {
            Some(r as i64)
        } else {
            None
        }
    }
}

impl Scalar for QC {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    fn from_c64(z: C64) -> Self {
        let conv = |x: f64| BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        Complex::new(conv(z.re), conv(z.im))
    }

    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn from_rational_parts(re: &BigRational, im: &BigRational) -> Self {
        Complex::new(re.clone(), im.clone())
    }

    fn display(&self) -> String {
        if self.im.is_zero() {
            format!("{}", self.re)
        } else if self.im.is_negative() {
            format!("{}-{}i", self.re, -self.im.clone())
        } else {
            format!("{}+{}i", self.re, self.im)
        }
    }

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn powc(&self, _e: &Self) -> Option<Self> {
        None
    }

    fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }
}

/// Parses a rational literal such as `3`, `-2/7` or `0.125` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((mantissa, exp)) = s.split_once(['e', 'E']) {
        let base = parse_rational(mantissa)?;
        let e: i32 = exp.parse().ok()?;
        let scale = BigRational::from_integer(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
        return Some(if e < 0 { base / scale } else { base * scale });
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let num: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(num, den);
        return Some(if neg { -q } else { q });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Parses `a`, `a+bi`, `a-bi`, `bi` or `i` (parts are rational literals)
/// into exact real and imaginary parts.
pub fn parse_complex(s: &str) -> Option<(BigRational, BigRational)> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return Some((parse_rational(&s)?, BigRational::zero()));
    };
    // split before the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_rational(&body[..k])?, &body[k..]),
        None => (BigRational::zero(), body),
    };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        text => parse_rational(text.strip_prefix('+').unwrap_or(text))?,
    };
    Some((re, im))
}

/// `x^k` for a possibly negative integer exponent.
pub fn powi<S: Scalar>(x: &S, k: i64) -> S {
    let mut result = S::one();
    let mut base = if k < 0 { S::one() / x.clone() } else { x.clone() };
    let mut e = k.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            result = result * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    result
}

/// Relative error `|a - b| / max(|a|, |b|, 1e-300)`; zero when both vanish.
pub fn rel_err<S: Scalar>(a: &S, b: &S) -> f64 {
    let d = (a.clone() - b.clone()).magnitude();
    if d == 0.0 {
        return 0.0;
    }
    d / a.magnitude().max(b.magnitude()).max(1e-300)
}

/// Absolute error `|a - b|`.
pub fn abs_err<S: Scalar>(a: &S, b: &S) -> f64 {
    (a.clone() - b.clone()).magnitude()
}

/// `true` if `x` is real and strictly negative (exact: sign of the rational part).
pub fn is_negative_real(x: &QC) -> bool {
    x.im.is_zero() && x.re.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_complex("0.7+0.3i"), Some((r(7, 10), r(3, 10))));
        assert_eq!(parse_complex("-1"), Some((r(-1, 1), r(0, 1))));
        assert_eq!(parse_complex("-1/2-i"), Some((r(-1, 2), r(-1, 1))));
        assert_eq!(parse_complex("2i"), Some((r(0, 1), r(2, 1))));
        assert_eq!(parse_complex("-i"), Some((r(0, 1), r(-1, 1))));
        assert_eq!(parse_complex("1e-1+2e-1i"), Some((r(1, 10), r(1, 5))));
        assert_eq!(parse_complex("abc"), None);
        assert_eq!(parse_complex(""), None);
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-2/6").unwrap(), BigRational::new((-1).into(), 3.into()));
        assert_eq!(parse_rational("0.125").unwrap(), BigRational::new(1.into(), 8.into()));
        assert_eq!(parse_rational("-1.5").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
        assert_eq!(parse_rational("2.5e-1").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_rational("3e2").unwrap(), BigRational::from_integer(300.into()));
    }

    #[test]
    fn integer_detection() {
        assert_eq!(C64::new(3.0, 0.0).as_integer(), Some(3));
        assert_eq!(C64::new(3.5, 0.0).as_integer(), None);
        assert_eq!(QC::from_ratio(-4, 2).as_integer(), Some(-2));
        assert_eq!(QC::from_ratio(1, 2).as_integer(), None);
    }

    #[test]
    fn negative_powers() {
        let x = QC::from_ratio(2, 3);
        assert_eq!(powi(&x, -3), QC::from_ratio(27, 8));
        assert_eq!(powi(&x, 0), QC::one());
        assert!((powi(&C64::new(0.0, 1.0), 2) + C64::one()).norm() < 1e-15);
    }
}
