use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid face word: {0}")]
    InvalidWord(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a chain complex: {0}")]
    Structural(String),

    #[error("index set out of range: {0}")]
    Range(String),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("degree mismatch: {0}")]
    Degree(String),

    #[error("no face rule for d{index} on {generator}")]
    MissingRule { generator: String, index: usize },

    #[error("operator not defined in this dimension: {0}")]
    Dimension(String),

    #[error("unknown order for composite class {0}")]
    UnknownOrder(String),

    #[error("sign dictionary rejected: {0}")]
    Dictionary(String),

    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },

    #[error("integer overflow during {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
