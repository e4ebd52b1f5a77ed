use thiserror::Error;

/// Errors raised while building or validating graphs, density matrices and
/// clustered families.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for a graph on {order} vertices")]
    VertexOutOfRange { index: usize, order: usize },

    #[error("edge ({from}, {to}) has zero weight")]
    ZeroWeight { from: usize, to: usize },

    #[error("loop at vertex {vertex} has non-real weight (im = {im})")]
    ComplexLoop { vertex: usize, im: f64 },

    #[error("edge ({from}, {to}) has a non-finite weight")]
    NonFiniteWeight { from: usize, to: usize },

    #[error("edge ({from}, {to}) is listed twice with inconsistent weights")]
    ConflictingEdge { from: usize, to: usize },

    #[error("graph must have at least one vertex")]
    EmptyVertexSet,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: |a_ij - conj(a_ji)| = {deviation:e} at ({row}, {col})")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("trace must be 1, got {trace}")]
    TraceNotUnit { trace: f64 },

    #[error("Laplacian has zero trace; the graph defines no density matrix")]
    ZeroTrace,

    #[error("density matrix is not graphical: row {row} has diagonal {diagonal} < off-diagonal modulus sum {off_diagonal}")]
    NotGraphical { row: usize, diagonal: f64, off_diagonal: f64 },

    #[error("shape mismatch: expected order {expected}, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },

    #[error("vector lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("measurement basis is not orthonormal: |<b_{i}|b_{j}> - delta| = {deviation:e}")]
    NotOrthonormal { i: usize, j: usize, deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not an X-state graph: {0}")]
    NotXState(String),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
