use thiserror::Error;

/// Errors raised by the algebraic layers of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {left} vs {right}")]
    DomainMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("operation requires a field, got {0}")]
    NotAField(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("wrong space: {0}")]
    WrongSpace(String),
    #[error("expression is not homogeneous")]
    NotHomogeneous,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("matrix is singular")]
    Singular,
    #[error("quadratic form is not degenerate (ac != b^2)")]
    NotDegenerate,
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("unknown identity case {0}")]
    UnknownCase(String),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("job needs {needed} classifications, budget is {budget}; pass --force to override")]
    OverBudget { needed: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
