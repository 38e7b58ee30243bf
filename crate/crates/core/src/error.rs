use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hypergraph must have at least one vertex")]
    NoVertices,

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {vertex} repeated within an edge")]
    RepeatedVertex { vertex: usize },

    #[error("duplicate edge {edge:?}")]
    DuplicateEdge { edge: Vec<usize> },

    #[error("edge {edge:?} has fewer than two vertices")]
    EdgeTooSmall { edge: Vec<usize> },

    #[error("edge size {size} exceeds the tensor order {order}")]
    EdgeTooLarge { size: usize, order: usize },

    #[error("invalid edge-type set: {0}")]
    InvalidEdgeTypes(String),

    #[error("inclusion probability {0} is not in [0, 1]")]
    InvalidProbability(f64),

    #[error("hypergraph has no edges, so its tensors are undefined")]
    EmptyEdgeSet,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("alpha({order}, {size}) is undefined: need 1 <= size <= order")]
    AlphaDomain { order: usize, size: usize },

    #[error("tensor order {0} exceeds the exact-arithmetic limit of 20")]
    OrderTooLarge(usize),

    #[error("dense tensor would need {entries} entries, above the cap of {cap}")]
    OracleCapExceeded { entries: u128, cap: u128 },

    #[error(
        "power iteration did not converge after {iterations} iterations \
         (eigenvalue bracket [{lower}, {upper}])"
    )]
    NonConvergence {
        iterations: usize,
        lower: f64,
        upper: f64,
    },

    #[error("expected a strictly positive value, got {0}")]
    NonPositive(f64),

    #[error("spectral result is not converged")]
    Unconverged,

    #[error("vector is not on the standard simplex: {0}")]
    OffSimplex(String),

    #[error("invalid options: {0}")]
    InvalidOptions(String),
}
