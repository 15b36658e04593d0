use thiserror::Error;

/// Errors raised by the audit library.
///
/// `Input` failures map to CLI exit code 2. `Invariant` means a proved
/// statement was contradicted by a computation and always indicates a bug
/// or a failed empirical hypothesis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("sequence prefix too short: need at least {needed} terms, got {got}")]
    InsufficientPrefix { needed: usize, got: usize },

    #[error("term {index} is not an integer")]
    NonInteger { index: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("root finder failed residual test (max relative residual {max_residual:e}, tolerance {tol:e})")]
    Numeric { max_residual: f64, tol: f64 },
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    /// True for errors caused by bad caller input rather than a failed check.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::Input(_) | Error::InsufficientPrefix { .. } | Error::NonInteger { .. } | Error::NotPrime(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
