//! Shared error type for all exact-computation routines.

use thiserror::Error;

/// Errors surfaced by torus arithmetic, seed mutation and the structure checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not skew-symmetric at ({0},{1})")]
    NotSkewSymmetric(usize, usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("not divisible")]
    NotDivisible,

    #[error("mutation direction {0} out of range [1,{1}]")]
    DirectionOutOfRange(usize, usize),

    #[error("not compatible: {0}")]
    NotCompatible(String),

    #[error("not skew-symmetrizable")]
    NotSkewSymmetrizable,

    #[error("rank deficient")]
    RankDeficient,

    #[error("Lambda singular")]
    LambdaSingular,

    #[error("monomial outside g-window: X^{0}")]
    MonomialOutsideWindow(String),

    #[error("table incomplete: missing entry for {0}")]
    TableIncomplete(String),

    #[error("not log-canonical at ({0},{1})")]
    NotLogCanonical(usize, usize),

    #[error("inconsistent scalar in block {0}")]
    InconsistentBlockScalar(usize),

    #[error("nonzero cross-block bracket ({0},{1})")]
    CrossBlockBracket(String, String),

    #[error("not of standard shape at X^{0}")]
    NotStandardShape(String),

    #[error("scalar mismatch between X^{0} and X^{1}")]
    ScalarMismatch(String, String),

    #[error("no commutation chain inside the window between X^{0} and X^{1}")]
    NoCommutationChain(String, String),

    #[error("blocks do not partition the exchange directions: {0}")]
    BadBlockPartition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
