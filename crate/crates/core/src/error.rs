use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands that cannot be combined, e.g. elements of different `O_n`.
    #[error("usage error: {0}")]
    Usage(String),

    /// The input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {what} needs {needed}, cap is {cap}")]
    Resource { what: String, needed: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, needed: usize, cap: usize) -> Self {
        Error::Resource {
            what: what.into(),
            needed,
            cap,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
