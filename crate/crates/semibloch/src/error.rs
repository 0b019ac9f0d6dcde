use thiserror::Error;

/// Error type shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Evaluation point (or translation) outside the domain of a signal.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numeric parameter out of its admissible range (epsilon, q, T, ...).
    #[error("parameter error: {0}")]
    Parameter(String),

    /// Operation requires a representation the given signal does not have.
    #[error("unsupported representation: {0}")]
    Unsupported(String),

    /// Structural invariant of an input document violated; names the field.
    #[error("validation error in field `{field}`: {message}")]
    Validation { field: String, message: String },

    /// A stated precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Kernel block norms do not decay; the summability constant diverges.
    #[error("kernel not summable: {0}")]
    NonSummable(String),

    /// Exact and numeric classification paths contradict each other.
    #[error("diagnostic disagreement: {0}")]
    Disagreement(String),

    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }
}
