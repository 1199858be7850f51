use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("truncation bounds differ ({left} vs {right})")]
    BoundMismatch { left: u32, right: u32 },

    #[error("constant term must be {expected}")]
    ConstantTerm { expected: &'static str },

    #[error("series must have the form x + O(x^2) in a single degree-1 variable")]
    NotCompositionallyInvertible,

    #[error("multizeta index {index} diverges (the exponent on the largest summation index must be at least 2)")]
    Divergent { index: String },

    #[error("requested error bound {0:e} is below what double precision can certify")]
    Precision(f64),

    #[error("bound {requested} exceeds what truncation degree {available} determines")]
    Truncation { requested: u32, available: u32 },

    #[error("{0}")]
    Domain(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    /// Stable machine-readable identifier, used in CLI and C error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::BoundMismatch { .. } => "bound-mismatch",
            Error::ConstantTerm { .. } => "constant-term",
            Error::NotCompositionallyInvertible => "not-invertible",
            Error::Divergent { .. } => "divergent",
            Error::Precision(_) => "precision",
            Error::Truncation { .. } => "truncation",
            Error::Domain(_) => "domain",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
