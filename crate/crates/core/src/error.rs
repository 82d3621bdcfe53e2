use thiserror::Error;

use crate::hypergraph::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: u128,
        min: u128,
        max: u128,
    },

    #[error("invalid hypergraph: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("{what} needs {requested}, which exceeds the budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("hypergraph does not have Property O")]
    NotPropertyO,

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
