use alloc::string::String;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("basis is not closed under the bracket: {0}")]
    NotASubalgebra(String),
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("weight is not dominant: {0}")]
    InvalidWeight(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("convention failure: {0}")]
    ConventionFailure(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
