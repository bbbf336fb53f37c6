use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("relations span a {0}-dimensional space, expected 3")]
    RelationRank(usize),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("trivial filtration (W^(1) = 0)")]
    TrivialFiltration,

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("point-scheme cubic vanishes identically (linear case)")]
    IdenticallyZeroCubic,

    #[error("left and right point-scheme cubics are not proportional")]
    NotSemistandard,

    #[error("degenerate point {point}: kernel of M(p) has dimension {nullity}")]
    DegeneratePoint { point: String, nullity: usize },

    #[error("point is not on the point scheme: {0}")]
    NotOnCurve(String),

    #[error("only {found} points available, {requested} requested")]
    InsufficientPoints { found: usize, requested: usize },

    #[error("singular locus is positive-dimensional")]
    PositiveDimensionalSingularLocus,

    #[error("evaluation kernel did not stabilize at dimension 18 (last dimension {0})")]
    RankDeficientSampling(usize),

    #[error("normal element space has dimension {0}, expected 1")]
    NotOneDimensional(usize),

    #[error("operation requires a prime field")]
    RequiresPrimeField,

    #[error("no fixture found after {0} candidates")]
    NotFound(usize),

    #[error("invalid word pattern: {0}")]
    Pattern(String),

    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn schema(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        msg: msg.into(),
    }
}
