//! Error type shared by the whole crate.

/// Errors produced by kernel operations, model loading, and verification
/// drivers. The variants are grouped so that the CLI can map them onto its
/// stable exit-code contract (2 = invalid input, 3 = unsupported parameters,
/// 1 = internal check failure).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(
        "modular case unsupported: characteristic {characteristic} divides group order {order}"
    )]
    ModularCase { characteristic: u64, order: u64 },
    #[error("field does not split; enlarge k (suggested extension degree {suggested})")]
    NonSplit { suggested: u32 },
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code for the CLI contract: 0 success, 1 internal check failure,
    /// 2 input invalid, 3 unsupported parameters.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ShapeMismatch(_) | Error::FieldMismatch(_) | Error::InvalidInput(_) => 2,
            Error::Unsupported(_) | Error::ModularCase { .. } | Error::NonSplit { .. } => 3,
            Error::CheckFailed(_) => 1,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn check(msg: impl Into<String>) -> Self {
        Error::CheckFailed(msg.into())
    }
}
