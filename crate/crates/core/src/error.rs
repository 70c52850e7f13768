use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the domain of the model (non-positive length,
    /// non-positive gain, coincident positions, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("lookup failed: {0}")]
    Lookup(String),

    #[error("insufficient data: need at least {needed}, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("cannot pair scans: {0}")]
    Pairing(String),

    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("line {line}: duplicate sample for {key}")]
    Duplicate { line: u64, key: String },

    #[error("scan {key}: {message}")]
    Grid { key: String, message: String },

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Coarse grouping of errors, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Input,
    Domain,
    Data,
    Io,
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse { .. } | Error::Duplicate { .. } | Error::Grid { .. } | Error::Config(_) => {
                ErrorCategory::Input
            }
            Error::Domain(_) | Error::NoSolution(_) => ErrorCategory::Domain,
            Error::Shape(_)
            | Error::Lookup(_)
            | Error::InsufficientData { .. }
            | Error::DegenerateFit(_)
            | Error::Pairing(_) => ErrorCategory::Data,
            Error::Io(_) => ErrorCategory::Io,
        }
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        let line = err.position().map(|p| p.line()).unwrap_or(0);
        match err.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => Error::Parse {
                line,
                message: format!("{other:?}"),
            },
        }
    }
}
