use thiserror::Error;

use crate::numerics::Backend;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {0:?} as a decimal number")]
    Parse(String),

    #[error("mixed backends: {left} and {right}")]
    MixedBackend { left: Backend, right: Backend },

    #[error("division by zero (or by an interval containing zero)")]
    DivisionByZero,

    #[error("value too large for a 64-bit float")]
    Overflow,

    #[error("invalid interval: lower endpoint exceeds upper endpoint")]
    InvalidInterval,

    /// The recursion hit a zero divisor `R_{index - 1}` while computing `R_index`.
    #[error("degenerate recursion at index {index}: divisor R_{divisor} is zero")]
    DegenerateRecursion { index: usize, divisor: usize },

    #[error("lambda must be positive")]
    NonPositiveLambda,

    #[error("lambda <= 2 is outside the proven regime; pass the unproven-regime flag to proceed")]
    UnprovenRegime,

    #[error("exact backend is capped at N = {cap} (requested {requested})")]
    ExactCapExceeded { requested: usize, cap: usize },

    #[error("index out of range: {0}")]
    Range(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("work budget exceeded: {0}")]
    Budget(String),
}
