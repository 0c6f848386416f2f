use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("algebra is infinite dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("relations are not admissible: {0}")]
    NonAdmissible(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a module map: {0}")]
    InvalidMap(String),
    #[error("search cap exceeded: {0}")]
    CapExceeded(String),
    #[error("not tilting: {axiom}: {detail}")]
    NotTilting { axiom: String, detail: String },
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Semantic(String),
    #[error("unknown command {0:?}")]
    UnknownCommand(String),
    #[error("io: {0}")]
    Io(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
