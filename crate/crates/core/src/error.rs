use thiserror::Error;

/// Errors raised by the exact arithmetic and series engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("series has a nonzero constant term; exp needs Q-adic valuation >= 1")]
    NonZeroConstantTerm,

    #[error("series constant term is not the unit; divide it out before taking log")]
    NonUnitConstantTerm,

    #[error("x^{degree} - {base} is reducible over Q, quotient is not a field")]
    ReducibleModulus { degree: u32, base: String },

    #[error("pole of order {order} at the requested point (simple pole required)")]
    HigherOrderPole { order: usize },

    #[error("residue requested at q = 0")]
    ResidueAtZero,

    #[error("coefficients carry specialized parameters; use generator-level Adams operations")]
    OpaqueParameters,

    #[error("Adams operation undefined on this coefficient ring: {0}")]
    AdamsUndefined(String),

    #[error("torus characters must be pairwise distinct and nonzero")]
    CoincidentCharacters,

    #[error("specialization hits a pole: {0}")]
    PoleAtSpecialization(String),

    #[error("unclassified denominator factor: {0}")]
    UnclassifiedFactor(String),

    #[error("truncation too small: {0}")]
    InsufficientPrecision(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
