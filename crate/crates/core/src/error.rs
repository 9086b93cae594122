use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("algebra mismatch: `{0}` vs `{1}`")]
    AlgebraMismatch(String, String),

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("element is not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("augmentation of the operator is not the identity")]
    AugmentNotIdentity,

    #[error("operator does not lie in the image of the representation: {0}")]
    PullbackFailed(String),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("{0}")]
    Invalid(String),

    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },

    #[error("validation failed for `{name}`:\n{report}")]
    Validation { name: String, report: String },

    #[error("rewrite termination measure violated: {0}")]
    Termination(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
