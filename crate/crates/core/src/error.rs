use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Input outside the domain of the operation (non-finite, wrong sign, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation is undefined at this degenerate input.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A documented precondition does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An iterative solver failed to reach its tolerance.
    #[error("{stage} did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence {
        stage: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// A singular linear system was met.
    #[error("singular matrix in {0}")]
    Singular(&'static str),

    /// The system description is inconsistent.
    #[error("configuration error: {0}")]
    Configuration(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
