use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("theory mismatch: {0}")]
    TheoryMismatch(String),
    #[error("ring {0} is not Euclidean")]
    NonEuclidean(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Unsupported(_) | Error::NonEuclidean(_) | Error::TheoryMismatch(_) => 3,
            Error::Verification(_) | Error::NotDivisible(_) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn verify(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(msg()))
    }
}
