use thiserror::Error;

/// Errors raised by the combinatorial engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("weights differ: {left} vs {right}")]
    WeightMismatch { left: usize, right: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("inexact division in {context}: {numerator} / {denominator}")]
    InexactDivision {
        context: &'static str,
        numerator: i128,
        denominator: i128,
    },

    #[error("table too large: weight {requested} exceeds limit {limit}")]
    TableTooLarge { requested: usize, limit: usize },

    #[error("degree {requested} exceeds configured maximum {limit}")]
    DegreeLimit { requested: usize, limit: usize },

    #[error("exponent bound exceeded: |{exponent}| > {bound}")]
    ExponentBound { exponent: i64, bound: i64 },

    #[error("series constant term must be {expected}, found {found}")]
    ConstantTerm { expected: &'static str, found: i128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed series file: {0}")]
    SeriesFile(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
