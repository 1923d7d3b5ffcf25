use thiserror::Error;

use crate::fingroup::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("invalid group datum: {}", join_violations(.0))]
    InvalidDatum(Vec<Violation>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("budget exceeded: slice dimension {dimension} exceeds budget {budget}")]
    Budget { dimension: u128, budget: u64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("not a Galois object: {0}")]
    NotGalois(String),
    #[error("unsupported scalar: {0}")]
    UnsupportedScalar(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
