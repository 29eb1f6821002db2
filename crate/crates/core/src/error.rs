use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate simplex: |det A| = {det:e} is below the threshold {threshold:e}")]
    DegenerateSimplex { det: f64, threshold: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported body for this operation: {0}")]
    UnsupportedBody(&'static str),

    #[error("empty vertex set")]
    EmptyVertexSet,

    #[error("too many sign vectors: n = {n} exceeds the enumeration cap {cap}")]
    TooManySignVectors { n: usize, cap: usize },

    #[error("too many cube vertices: n = {n} exceeds the enumeration cap {cap}")]
    TooManyVertices { n: usize, cap: usize },

    #[error("simplex vertex {vertex} is not contained in the body")]
    SimplexNotInBody { vertex: usize },

    #[error("no Hadamard matrix of order {order} is constructible here")]
    NotConstructible { order: usize },

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("dimension {n} exceeds the limit {max} for this mode")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("linear program failed: {0}")]
    Lp(#[from] crate::lp::LpError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
