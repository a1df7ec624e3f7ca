use thiserror::Error;

use crate::convspace::AxiomViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the combinatorial modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed relation matrix: {0}")]
    Structural(String),
    #[error("index relation is not a directed preorder: {0}")]
    NotDirected(String),
    #[error("index element {index} out of range for index of size {size}")]
    InvalidIndex { index: usize, size: usize },
    #[error("point {point} out of range for carrier of size {size}")]
    InvalidPoint { point: usize, size: usize },
    #[error("carrier mismatch: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },
    #[error("carrier of size {0} exceeds the supported maximum of 64 points")]
    CarrierTooLarge(usize),
    #[error("index sets differ")]
    IndexMismatch,
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("precondition violated: {0}")]
    Domain(String),
    #[error("internal invariant broken: {0}")]
    Invariant(String),
    #[error("axiom {0}")]
    Axiom(AxiomViolation),
    #[error("empty family")]
    EmptyFamily,
    #[error("unsupported descriptor: {0}")]
    Unsupported(String),
}
