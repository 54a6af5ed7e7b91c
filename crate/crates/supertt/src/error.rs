use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("work budget exceeded after {0} steps")]
    Budget(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generator is not bihomogeneous: {0}")]
    NotHomogeneous(String),
    #[error("module invariant violated: {0}")]
    ModuleInvariant(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bad JSON: {0}")]
    Json(String),
    #[error("weight is not dominant: {0}")]
    NotDominant(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
