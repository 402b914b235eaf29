use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vectors are linearly dependent (rank {rank})")]
    DependentVectors { rank: usize },

    #[error("zero vector where a nonzero point was required")]
    ZeroVector,

    #[error("grade mismatch: expected {expected}, got {got}")]
    GradeMismatch { expected: usize, got: usize },

    #[error("coefficient degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("orthogonality system has solution dimension {dim} (expected 25); W is degenerate for this method")]
    DegenerateW { dim: usize },

    #[error("sample equations admit no quadratic bivector for basis element {column}")]
    InconsistentSamples { column: usize },

    #[error("pi52 matrix has rank {rank}, expected 126")]
    RankDeficit { rank: usize },

    #[error("point is not a zero of the bivector")]
    NotAZero,

    #[error("no admissible configuration after {attempts} draws")]
    ExhaustedRetries { attempts: usize },

    #[error("tangent space has dimension {dim} (expected 2): singular point")]
    SingularPoint { dim: usize },

    #[error("plane is not a point of E_W (its Plücker vector is not in W or not decomposable)")]
    NotOnCurve,

    #[error("W maps to the zero bivector class")]
    ZeroBracket,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
