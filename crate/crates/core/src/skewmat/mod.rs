//! Block-structured skew-symmetric matrices, pfaffians and α-determinants.

pub mod block;
pub mod identities;
pub mod json;
pub mod matrix;
pub mod pfaffian;
pub mod scalar;

pub use block::{check_skew, make_j, Block, BlockSkewMatrix, SKEW_TOL};
pub use identities::{bordered_matrix, bordered_pf, minor_summation, pf_addition};
pub use matrix::{Matrix, SquareMatrix};
pub use pfaffian::{alpha_det, pfaffian, pfaffian_elim, pfaffian_sum, MATCHING_SUM_MAX_DIM};
pub use scalar::{abs_err, parse_complex, parse_rational, powi, rel_err, Scalar, C64, QC};
