//! α-pfaffians and their neighbours: α-determinants, pfaffian expansion
//! identities, α-pfaffian point processes, the shifted Schur measure
//! correlation kernel and positivity criteria for pfaffians.
//!
//! Every routine that is purely algebraic is generic over
//! [`skewmat::Scalar`], so identities can be checked either in complex
//! floating point ([`skewmat::C64`]) or in exact complex-rational arithmetic
//! ([`skewmat::QC`]).

pub mod alphapf;
pub mod ensemble;
pub mod error;
pub mod permcycle;
pub mod pointproc;
pub mod positivity;
pub mod series;
pub mod shiftedschur;
pub mod skewmat;
pub mod verify;

pub use error::{Error, Result};
