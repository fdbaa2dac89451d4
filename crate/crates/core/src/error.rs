use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands over different algebra sizes, or malformed matrices.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// A form of the wrong degree was supplied.
    #[error("grade error: {0}")]
    Grade(String),
    /// Charge or side mismatch between bundle-valued forms, or an argument
    /// outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
