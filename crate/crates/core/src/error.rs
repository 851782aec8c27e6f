use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("unsupported label: {0}")]
    UnsupportedLabel(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("resource limit: more than {budget} elements")]
    ResourceLimit { budget: usize },
    #[error("invalid folding: {0}")]
    InvalidFolding(String),
    #[error("q-integer base must be ±q^j with j ≥ 1, got {0}")]
    InvalidBase(String),
    #[error("divisor has constant term {0}, not a unit")]
    NonUnitDivisor(String),
    #[error("substitution produced negative degree {degree} from term {term}")]
    NegativeDegree { degree: i64, term: String },
    #[error("an exact quotient by a non-constant series needs a truncation order")]
    MissingTruncation,
    #[error("corrupt cache entry {0}")]
    CorruptCache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
