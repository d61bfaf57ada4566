use thiserror::Error;

/// Errors raised by the set engine and its ingestion paths.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("unsupported dimension {0}: only 1 and 2 are supported")]
    InvalidDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("constraint has an all-zero normal vector")]
    ZeroNormal,
    #[error("arrangement capacity exceeded: {lines} distinct lines (limit {limit})")]
    Capacity { lines: usize, limit: usize },
    #[error("malformed set encoding: {0}")]
    Malformed(String),
}
