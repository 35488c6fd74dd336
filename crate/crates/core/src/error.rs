use thiserror::Error;

/// Errors produced by the verification kernels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("rescaling vector must have no zero entry")]
    ZeroInUnitVector,
    #[error("resolution must be even and at least 2, got {0}")]
    OddResolution(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid join point: {0}")]
    InvalidJoinPoint(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("complex is not pure: {0}")]
    NonPure(String),
    #[error("chart gluing failed: {0}")]
    Validity(String),
    #[error("not a poset: {0}")]
    NotAPoset(String),
    #[error("inclusion is not simplicial: {0}")]
    NonSimplicialInclusion(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("serialization: {0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
