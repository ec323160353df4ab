use thiserror::Error;

/// Errors raised by the arithmetic, descent and residue machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    #[error("bad reduction at {place}: {reason}")]
    BadReduction { place: String, reason: String },

    #[error("{place} lies in the bad set S")]
    BadPlace { place: String },

    #[error("precision cap {cap} reached before {what} was determined")]
    PrecisionCap { what: String, cap: usize },

    #[error("element is a zero divisor in L (vanishes in some component)")]
    ZeroDivisor,

    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("f does not split over K")]
    NotSplit,

    #[error("unsupported symbol: {0}")]
    UnsupportedSymbol(String),

    #[error("indeterminate residue: {0}")]
    IndeterminateResidue(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
