use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("form is not skew-symmetric")]
    NotSkew,
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("subspace is not a two-sided ideal")]
    NotIdeal,
    #[error("not symplectic: {0}")]
    NotSymplectic(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("core assertion failed: {0}")]
    CoreAssertion(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("missing parameter `{0}`")]
    MissingParam(String),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
