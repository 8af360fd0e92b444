use thiserror::Error;

/// Crate-wide error type. Operations that are total on valid input return
/// plain values; everything else funnels through here.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is not symmetric")]
    NotSymmetric,
    #[error("element has odd degree")]
    OddDegree,
    #[error("matrix is not positive semidefinite")]
    NotPsd,
    #[error("matrix is positive semidefinite; no improperness witness exists")]
    IsPsd,
    #[error("ill-formed problem: {0}")]
    IllFormed(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
