use thiserror::Error;

use crate::lattice::MegaidealLattice;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("subspace {0} is not an ideal")]
    NotAnIdeal(String),

    #[error("ad of {0} is not nilpotent")]
    NotNilpotent(String),

    #[error("megaideal closure did not reach a fixpoint within {budget} passes")]
    BudgetExceeded {
        budget: usize,
        partial: Box<MegaidealLattice>,
    },

    #[error("bracket [{left}, {right}] = {bracket} is not in the span of the given fields")]
    NotClosed {
        left: String,
        right: String,
        bracket: String,
    },

    #[error("fields are linearly dependent: {relation} = 0")]
    LinearlyDependent { relation: String },

    #[error("automorphism system has {0} unresolved equations")]
    ResidualSystem(usize),

    #[error("coordinate enumeration over dimension {dim} exceeds the cap {cap}")]
    EnumerationTooLarge { dim: usize, cap: usize },

    #[error("invalid structure constants: {0}")]
    InvalidAlgebra(String),

    #[error("point map is not invertible: {0}")]
    NotInvertible(String),

    #[error("{0}")]
    Format(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("json error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let text = e.to_string();
        Error::Json {
            line: e.line(),
            column: e.column(),
            message: text.strip_suffix(&suffix).unwrap_or(&text).to_string(),
        }
    }
}
