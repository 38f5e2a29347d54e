use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("{file}: {table}: {entry}: {message}")]
    Parse {
        file: String,
        table: String,
        entry: String,
        message: String,
    },
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
