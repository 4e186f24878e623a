use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic must be odd, got p = {0}")]
    EvenCharacteristic(u32),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("q must be an odd prime power >= 5, got q = {0}")]
    BadQ(u64),
    #[error("unsupported tower level {0}: levels are 1, 2, 4, ... (powers of two)")]
    UnsupportedLevel(u32),
    #[error("field of size {0} exceeds the table budget")]
    FieldTooLarge(u64),
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("point is not on the conic")]
    NotOnConic,
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("not a subgroup: {0}")]
    NotClosed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
