use thiserror::Error;

/// Errors produced by the state engine and the scattering calculations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("singular energy denominator: {0}")]
    SingularDenominator(String),

    /// The requested process has zero rate, so a ratio against it is undefined.
    #[error("no transition: {0}")]
    NoTransition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
