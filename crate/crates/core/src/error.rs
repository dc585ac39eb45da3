use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("index {t} out of range 1..={max}")]
    OutOfRange { t: u64, max: u64 },

    #[error("polynomial is not integer-valued")]
    NonIntegerValued,

    #[error("polynomial of degree {degree} is not a Hilbert polynomial for r = {r}")]
    NotHilbertPolynomial { r: usize, degree: usize },

    #[error("Gotzmann decomposition exceeds {0} terms")]
    GotzmannTooLarge(u64),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration of {count} subsets exceeds budget {budget}")]
    BudgetExceeded { count: String, budget: u64 },

    #[error("pairing not eventually polynomial from degree {0}")]
    NotPolynomial(u64),

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
