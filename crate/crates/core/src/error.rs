//! Error type shared by all modules.

/// Errors produced by the numerical and exact kernels.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative scheme failed to reach its tolerance.
    #[error("no convergence after {iterations} iterations: {context}")]
    Convergence { context: String, iterations: u32 },

    /// Structurally invalid input (wrong truncation order, zero leading
    /// coefficient, malformed grid, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn convergence(context: impl Into<String>, iterations: u32) -> Self {
        Error::Convergence {
            context: context.into(),
            iterations,
        }
    }
}
