use thiserror::Error;

/// Errors reported by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not skew-symmetric: max |b_kl + b_lk| = {deviation:e} exceeds tolerance {tolerance:e}")]
    NotSkewSymmetric { deviation: f64, tolerance: f64 },

    #[error("pfaffian needs an even dimension, got {0}")]
    OddDimension(usize),

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("weight mismatch: |lambda| = {left}, |rho| = {right}")]
    WeightMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("cycle {0:?} is not canonical (its first entry must be the smallest)")]
    NonCanonicalCycle(Vec<usize>),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("series truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },

    #[error("series constant term violates precondition: {0}")]
    ConstantTerm(String),

    #[error("alpha = 0 is not allowed here; use the alpha -> 0 limit form")]
    AlphaZero,

    #[error("{what} = {size} exceeds the supported limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },

    #[error("branch ambiguity: {0}")]
    Branch(String),

    #[error("operation not available in exact arithmetic: {0}")]
    ExactUnsupported(&'static str),

    #[error("coincident or degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("truncation order {got} too small, need at least {required}")]
    InsufficientOrder { required: usize, got: usize },

    #[error("series does not converge: {0}")]
    NonConvergent(String),

    #[error("block ({r},{s}) violates the SH conditions (deviation {deviation:e})")]
    NotSH { r: usize, s: usize, deviation: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
