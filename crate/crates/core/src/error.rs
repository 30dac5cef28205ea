use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero has no factorization over a prime set")]
    Zero,
    #[error("invalid prime set: {0}")]
    InvalidPrimes(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} exceeds the supported bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Budget refusals are reported separately from validation failures by the CLI.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
