//! Seeded random instances for tests, verification suites and scans.
//!
//! Floating entries are complex standard normal (real and imaginary parts
//! i.i.d. `N(0, 1/2)`); exact entries are complex rationals with numerators in
//! `-5..=5` and denominators in `1..=4`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::skewmat::{BlockSkewMatrix, Matrix, Scalar, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Per-item seed derived from a master seed (SplitMix64 finalizer), so that
/// parallel and serial runs draw identical samples.
pub fn derived_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(s * re, s * im)
}

/// One random scalar of the requested field.
pub fn random_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    if S::EXACT {
        let re = S::from_ratio(rng.random_range(-5..=5), rng.random_range(1..=4));
        let im = S::from_ratio(rng.random_range(-5..=5), rng.random_range(1..=4));
        re + S::from_c64(C64::new(0.0, 1.0)) * im
    } else {
        S::from_c64(complex_normal(rng))
    }
}

/// A random real scalar (imaginary part zero).
pub fn random_real<S: Scalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    if S::EXACT {
        S::from_ratio(rng.random_range(-5..=5), rng.random_range(1..=4))
    } else {
        let x: f64 = rng.sample(StandardNormal);
        S::from_c64(C64::new(x, 0.0))
    }
}

pub fn random_matrix<S: Scalar, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| random_scalar(rng))
}

pub fn random_skew<S: Scalar, R: Rng + ?Sized>(m: usize, rng: &mut R) -> BlockSkewMatrix<S> {
    BlockSkewMatrix::from_upper(m, |_, _| random_scalar(rng))
}

/// Skew matrix of arbitrary (possibly odd) dimension `n`.
pub fn random_skew_any<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<S> {
    let mut a = Matrix::zeros(n, n);
    for k in 0..n {
        for l in k + 1..n {
            let v: S = random_scalar(rng);
            a[(l, k)] = -v.clone();
            a[(k, l)] = v;
        }
    }
    a
}
