use thiserror::Error;

/// Everything that can go wrong inside the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable environment mismatch: {0}")]
    Environment(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree {degree} exceeds the guard of {limit}")]
    Resource { degree: u32, limit: u32 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent system: {0}")]
    Inconsistency(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
