use thiserror::Error;

/// Errors raised by constructions, mechanisms and estimators.
///
/// Verification failures are not errors: they come back as reports
/// (see [`crate::designs::DesignViolation`] and friends).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("unsupported Hadamard order {0}")]
    UnsupportedOrder(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
