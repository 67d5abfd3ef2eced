use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exact division failed, or two independent evaluation routes disagree.
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The request exceeds a documented enumeration ceiling.
    #[error("refused: {0}")]
    Refused(String),
    #[error("coefficient of degree {requested} requested beyond truncation degree {truncation}")]
    BeyondTruncation { requested: usize, truncation: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
