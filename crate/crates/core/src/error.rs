use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("invalid specialization: {0}")]
    InvalidSpecialization(String),
    #[error("singular specialization: {0}")]
    SingularSpecialization(String),
    #[error("empty input")]
    EmptyInput,
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("expression error in {cell}: {message}")]
    ExprError { cell: String, message: String },
    #[error("element is not in the full group G")]
    NotInG,
    #[error("invalid system: {0}")]
    InvalidSystem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
