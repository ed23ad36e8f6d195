//! Library error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parameter a must avoid {{0,-1}}")]
    ParameterA,
    #[error("A(n,n) requested in base-coordinate mode; use the ambient-gated constructor")]
    BaseCoordinateMode,
    #[error("not a root of the system: {0}")]
    NotARoot(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("reflection index {0} is not an even non-isotropic base root")]
    NotEvenReflectable(usize),
    #[error("reflection index {0} is not an odd isotropic base root")]
    NotOddReflectable(usize),
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("set is not parabolic: {0}")]
    NotParabolic(String),
    #[error("functional chain is empty or undefined on the span")]
    BadFunctionalChain,
    #[error("operation requires a finite Levi datum (got an affine one)")]
    AffineLevi,
    #[error("unrecognized component (no catalog match): {0}")]
    UnknownComponent(String),
    #[error("level must be nonzero")]
    ZeroLevel,
    #[error("weight offset lies outside the positive cone: {0}")]
    OutsideCone(String),
    #[error("unsupported export format {format} for {kind}")]
    UnsupportedFormat { format: String, kind: String },
}

pub type Result<T> = std::result::Result<T, Error>;
