use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("alphabet mismatch: expected {expected} generators, got {actual}")]
    AlphabetMismatch { expected: usize, actual: usize },

    #[error("element of degree {degree} does not fit a filtration basis of degree {max}")]
    DegreeOverflow { degree: usize, max: usize },

    /// A computation would exceed the configured size cap.
    #[error("resource cap exceeded: {what} has size {size}, cap is {cap}")]
    ResourceCap { what: String, size: String, cap: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid resolution:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no generating tuple found for seed {seed} after {attempts} draws")]
    NoGeneratingSample { seed: u64, attempts: usize },
}
