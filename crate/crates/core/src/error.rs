use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("boundary of boundary is nonzero in degree {degree}")]
    MalformedComplex { degree: usize },

    #[error("duplicate simplex {0:?}")]
    DuplicateSimplex(Vec<u32>),

    #[error("simplex {0:?} has a repeated vertex")]
    DegenerateSimplex(Vec<u32>),

    #[error("complex is not contained in the ambient complex: {0}")]
    NotInAmbient(String),

    #[error("vertex map is not simplicial: image of {0:?} is not a simplex of the target")]
    NotSimplicial(Vec<u32>),

    #[error("degenerate cover: {0}")]
    DegenerateCover(String),

    #[error("cover is declared covering but its pieces miss part of the ambient complex")]
    NotCovering,

    #[error("{0:?} is not a simplex of the nerve")]
    NotANerveSimplex(Vec<u32>),

    #[error("ambient rank mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("subgroup is not contained in the supergroup")]
    NotASubgroup,

    #[error("trivial group has no nontrivial central element")]
    TrivialGroup,

    #[error("matrix is not upper unitriangular")]
    NotUnitriangular,

    #[error("unsupported matrix size {0} (3 or 4 expected)")]
    UnsupportedSize(usize),

    #[error("linear part is not orthogonal")]
    NotOrthogonal,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("generators do not commute")]
    NonCommuting,

    #[error("chain is not strictly decreasing at position {0}")]
    NotStrictlyDecreasing(usize),

    #[error("enlargements are missing or do not contain their patches: {0}")]
    BadEnlargement(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("invalid box union: {0}")]
    InvalidBoxes(String),

    #[error("invalid cover specification: {0}")]
    InvalidCoverSpec(String),

    #[error("nonpositive constant {0}")]
    NonPositive(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },

    #[error("construction bug: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
