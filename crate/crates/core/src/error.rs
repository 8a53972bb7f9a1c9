use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error(
        "jacobi svd did not converge after {sweeps} sweeps (off-diagonal residual {residual:e})"
    )]
    IterationLimit { sweeps: usize, residual: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid tournament: {0}")]
    Tournament(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for failures of the numeric routines rather than of the input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::IterationLimit { .. })
    }
}
