use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the engine reports. `code()` is the stable name used in
/// JSON error objects and mapped to the C error codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not a derivation of heis: column Z must be (tr Ā, 0, 0)")]
    NotADerivation,
    #[error("isotropy vector is central (its X and Y coefficients vanish)")]
    CentralIsotropy,
    #[error("derivation is unimodular (tr Ā = 0); use the unimodular branch of classify")]
    UnimodularInput,
    #[error("no invariant Lorentz metric: {0}")]
    NoInvariantMetric(String),
    #[error("point {point:?} is outside the chart domain ({reason})")]
    DomainError { point: [f64; 3], reason: String },
    #[error("plane is degenerate: Gram determinant {0:e} below 1e-12")]
    DegeneratePlane(f64),
    #[error("integration step underflow at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotADerivation => "NotADerivation",
            Error::CentralIsotropy => "CentralIsotropy",
            Error::UnimodularInput => "UnimodularInput",
            Error::NoInvariantMetric(_) => "NoInvariantMetric",
            Error::DomainError { .. } => "DomainError",
            Error::DegeneratePlane(_) => "DegeneratePlane",
            Error::StepUnderflow { .. } => "StepUnderflow",
            Error::Parse(_) => "Parse",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
