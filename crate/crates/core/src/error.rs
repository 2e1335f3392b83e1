use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("matrix is not in osp(M/N)")]
    NotInOsp,
    #[error("{0} requires N odd")]
    RequiresOddN(String),
    #[error("Clifford factor has {generators} generators, above the limit of {limit}")]
    CliffordTooLarge { generators: usize, limit: usize },
    #[error("invalid primitive parameters: {0}")]
    InvalidParams(String),
    #[error("vector is not an eigenvector of {operator}")]
    NotEigenvector { operator: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("coroot normalization failed: {0}")]
    Normalization(String),
    #[error("parse error: {0}")]
    Parse(String),
}
