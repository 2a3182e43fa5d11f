use thiserror::Error;

/// Errors raised by the algebraic and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("precision underflow: result precision {prec} does not exceed order {order}")]
    PrecisionUnderflow { order: i64, prec: i64 },

    #[error("periodic generator detected: tau^{index}(theta) - theta vanishes")]
    PeriodicTheta { index: usize },

    #[error("mismatched operands: {0}")]
    Mismatch(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("argument too close to a pole: {0}")]
    PoleProximity(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(String),

    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("no element of order {order} in F_{q}")]
    NoRootOfUnity { order: u64, q: u64 },

    #[error("insufficient length: need {needed}, have {have}")]
    InsufficientLength { needed: usize, have: usize },

    #[error("window too small: {0}")]
    WindowTooSmall(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
