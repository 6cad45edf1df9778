use thiserror::Error;

/// Errors raised by the algebra engine and the constructions built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree-incompatible matrix: {0}")]
    DegreeMismatch(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("module is not of finite length")]
    NotFiniteLength,
    #[error("module is zero")]
    ZeroModule,
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("window [{lo}, {hi}] exceeds the configured cap")]
    WindowTooLarge { lo: i32, hi: i32 },
    #[error("empty input: {0}")]
    Empty(String),
    #[error("not a locally Cohen-Macaulay curve: {0}")]
    NotACurve(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("common divisor between {0}")]
    CommonDivisor(String),
    #[error("not a regular sequence: {0}")]
    NotRegularSequence(String),
    #[error("map is not well defined: {0}")]
    IllDefinedMap(String),
    #[error("section vanishes in codimension one")]
    DivisorialVanishing,
    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
