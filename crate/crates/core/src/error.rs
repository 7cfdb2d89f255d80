//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by evaluators, verifiers and loaders.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation at a pole of a meromorphic function.
    #[error("pole: {0}")]
    Pole(String),
    /// Argument region or parameter combination not implemented.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Requested accuracy cannot be reached with the given resources.
    #[error("accuracy error: {0}")]
    Accuracy(String),
    /// Working precision is too low for the requested operation.
    #[error("precision error: {0}")]
    Precision(String),
    /// The curve parameter lies on a singular fibre.
    #[error("singular curve: {0}")]
    SingularCurve(String),
    /// A newform coefficient source failed validation.
    #[error("rejected newform source for level {level}: {reason}")]
    RejectedSource {
        /// Level of the rejected form.
        level: u32,
        /// Human-readable failure description.
        reason: String,
    },
    /// Identity id not present in the verification registry.
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
    /// Malformed user input.
    #[error("parse error: {0}")]
    Parse(String),
    /// File system failure.
    #[error("io error: {0}")]
    Io(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
