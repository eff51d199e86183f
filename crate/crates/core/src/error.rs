use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Arguments are individually valid but violate a joint requirement.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A sample has zero spread and cannot be standardized or fitted.
    #[error("degenerate sample: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
