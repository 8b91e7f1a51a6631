use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("mutation class exceeds {limit} quivers")]
    ClassBudget { limit: usize },

    #[error("matrix is not unipotent: {0}")]
    NotUnipotent(String),

    #[error("classes {0} and {1} lie on the same ray")]
    RayCollision(String, String),

    #[error("class {0} has zero central charge")]
    ZeroCharge(String),

    #[error("central charge of simple {0} lies outside the upper half plane")]
    ChargeOutsideHalfPlane(usize),

    #[error("no factor rule for active class {0}")]
    NoFactorRule(String),

    #[error("stability model does not cover class {0}")]
    UnsupportedClass(String),

    #[error("no factorization with the given positions: {0}")]
    Factorization(String),

    #[error("unrecognized configuration: {0}")]
    UnrecognizedConfiguration(String),

    #[error("search budget exhausted after {states} states")]
    BudgetExhausted { states: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
