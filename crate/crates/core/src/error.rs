use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("invalid edit: {0}")]
    InvalidEdit(String),
    #[error("unsupported shape: {0}")]
    Shape(String),
    #[error("palette overflow: colour {0} is not below {cap}", cap = crate::lists::PALETTE)]
    Palette(usize),
    #[error("invalid list assignment: {0}")]
    Lists(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid construction parameters: {0}")]
    Spec(String),
    #[error("malformed classification: {0}")]
    Classification(String),
    #[error("resource guard: {0}")]
    Resource(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    /// Two independent procedures disagreed; signals a defect.
    #[error("inconsistency: {0}")]
    Inconsistent(String),
}
