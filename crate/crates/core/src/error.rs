use thiserror::Error;

/// Errors raised by the arithmetic, cone and identity layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates a documented precondition (coprimality, sign, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Evaluation hit a zero coordinate under a negative exponent, or a
    /// vanishing denominator factor.
    #[error("pole: {0}")]
    Pole(String),

    /// A grading does not give every denominator monomial positive degree.
    #[error("grading error: {0}")]
    Grading(String),

    /// A differentiation order annihilates the denominator at the all-ones point.
    #[error("order error: {0}")]
    Order(String),

    #[error("orientation error: {0}")]
    Orientation(String),

    /// An assembled object failed a self-check; indicates a bug, not bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
