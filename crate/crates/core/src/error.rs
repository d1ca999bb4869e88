use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("division not representable as power series: {0}")]
    NotRepresentable(String),

    #[error("composition requires an inner series with zero constant term")]
    NonZeroConstantTerm,

    #[error("unknown series name: {0}")]
    UnknownSeries(String),

    #[error("invalid multi-index: {0}")]
    InvalidIndex(String),

    #[error("requested order {requested} exceeds the order cap {cap}")]
    OrderCapExceeded { requested: usize, cap: usize },

    #[error("insufficient sample points: need at least {needed}, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("malformed rational: {0}")]
    ParseRational(String),
}
