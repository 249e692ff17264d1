use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("{operation} requires the {required} regime, but lambda/gamma0 = {ratio} is {actual}")]
    Regime {
        operation: &'static str,
        required: &'static str,
        actual: &'static str,
        ratio: f64,
    },

    #[error("non-finite value encountered at t = {at}")]
    NonFinite { at: f64 },

    #[error("invalid step size {0}; must be positive and finite")]
    InvalidStep(f64),

    #[error("eigensolver did not converge after {0} iterations")]
    NotConverged(usize),

    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dimension(expected: impl ToString, found: impl ToString) -> Self {
        Error::Dimension {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
