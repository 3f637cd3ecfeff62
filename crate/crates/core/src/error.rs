use thiserror::Error;

use crate::report::Violation;

/// Failures that prevent an operation from producing a result at all.
///
/// Axiom failures are not errors; they are collected in a
/// [`ValidationReport`](crate::report::ValidationReport).
#[derive(Debug, Error)]
pub enum Error {
    #[error("category has {morphisms} morphisms, above the limit of {limit}")]
    TooLarge { morphisms: usize, limit: usize },

    #[error("{} structural error(s), first: {}", .0.len(), .0.first().map(|v| v.message.as_str()).unwrap_or(""))]
    Structural(Vec<Violation>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("isomorphism certificate failed: {0}")]
    Certificate(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
