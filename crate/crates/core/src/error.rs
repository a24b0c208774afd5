use thiserror::Error;

/// Errors from structural quiver operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex index {0} is out of range")]
    UnknownVertex(usize),
    #[error("vertex index {0} listed twice")]
    DuplicateVertex(usize),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("loop at vertex index {0}")]
    Loop(usize),
    #[error("no arrow {tail} -> {head}")]
    MissingArrow { tail: String, head: String },
    #[error("row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("{what}: size {size} exceeds limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
}
