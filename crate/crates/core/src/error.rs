use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the reformulation engine.
///
/// Every variant has a stable name (see [`Error::name`]) that the command
/// line front end reports as the `"error"` discriminant. Indices that appear
/// in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed JSON: {0}")]
    MalformedJson(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix has rank {rank} but {m} rows; full row rank is required")]
    RankDeficient { rank: usize, m: usize },
    #[error("bad rational in {field}: {reason}")]
    BadRational { field: String, reason: String },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero on the diagonal at position {0}")]
    SingularDiagonal(usize),
    #[error("bad index set: {0}")]
    BadIndexSet(String),
    #[error("linear system for w is singular; the index set does not determine w")]
    SingularSystem,
    #[error("x does not satisfy Ax = b")]
    InfeasibleX,
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("bad box: {0}")]
    BadBox(String),
    #[error("system has no bounds")]
    MissingBounds,
    #[error("system has no objective")]
    MissingObjective,
    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Stable discriminant used in machine-readable error output.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MalformedJson(_) => "MalformedJson",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::BadRational { .. } => "BadRational",
            Error::NotSquare { .. } => "NotSquare",
            Error::SingularDiagonal(_) => "SingularDiagonal",
            Error::BadIndexSet(_) => "BadIndexSet",
            Error::SingularSystem => "SingularSystem",
            Error::InfeasibleX => "InfeasibleX",
            Error::BadArgument(_) => "BadArgument",
            Error::TooLarge { .. } => "TooLarge",
            Error::BadBox(_) => "BadBox",
            Error::MissingBounds => "MissingBounds",
            Error::MissingObjective => "MissingObjective",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
