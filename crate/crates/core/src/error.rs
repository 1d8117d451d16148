use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero representation has no word")]
    ZeroRepresentation,
    #[error("summand exceeds nilpotency bound: length {len} > {bound}")]
    ExceedsNilpotencyBound { len: usize, bound: usize },
    #[error("already maximal")]
    AlreadyMaximal,
    #[error("no admissible pair")]
    NoAdmissiblePair,
    #[error("dimension vector is not homogeneous")]
    NotHomogeneous,
    #[error("nilpotency bound {bound} is not a multiple of n = {n}")]
    BoundNotMultiple { bound: usize, n: usize },
    #[error("vertex count mismatch: expected {expected}, got {got}")]
    VertexCountMismatch { expected: usize, got: usize },
    #[error("vertex label {label} out of range 1..={n}")]
    VertexOutOfRange { label: i64, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a cell: {0}")]
    NotACell(String),
    #[error("malformed configuration: {0}")]
    MalformedConfig(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("elimination order violated: {0}")]
    EliminationOrder(String),
    #[error("oracle size limit: {0}")]
    OracleSizeLimit(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
