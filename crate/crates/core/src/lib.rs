//! Exact arithmetic in *-rings (Weyl algebras, matrix *-rings, commutative
//! polynomial rings) and search / verification of quadratic-module positivity
//! certificates: sums of hermitian squares, improperness witnesses, and
//! nowhere-negative-semidefinite certificates.
//!
//! Everything on a verification path is exact rational arithmetic; floating
//! point appears only inside the numeric SDP kernel, whose output is always
//! hardened back to exact rationals and re-verified before any claim is made.

pub mod error;
pub mod scalar;

pub mod linalg;

pub mod star_poly;

pub mod commutative;

pub mod weyl;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, Rational};
