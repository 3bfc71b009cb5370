use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Root bracketing was requested on an interval without a sign change.
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    /// A function evaluation produced NaN or infinity.
    #[error("non-finite evaluation at x = {x}")]
    NonFinite { x: f64 },

    /// Continuation lost track of a root branch.
    #[error("bracket failure: {0}")]
    BracketFailure(String),

    /// A computed root failed its polynomial/equation certificate.
    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),

    /// An internally constructed object failed its own cross-check.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// The detected symmetry set matches no wallpaper group (tolerance failure).
    #[error("symmetry inconsistency: {0}")]
    InconsistentSymmetries(String),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 for domain/validation problems,
    /// 3 for internal consistency failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::NoSignChange { .. }
            | Error::NonFinite { .. }
            | Error::Parse(_)
            | Error::Io(_) => 2,
            Error::BracketFailure(_)
            | Error::CertificateMismatch(_)
            | Error::Consistency(_)
            | Error::InconsistentSymmetries(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
