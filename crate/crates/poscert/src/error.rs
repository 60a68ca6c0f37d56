use thiserror::Error;

/// Errors shared across the library.
///
/// `kind()` gives the machine-readable name used in CLI reports; the CLI
/// maps kinds onto its exit-code contract (input errors -> 2, precision
/// failures -> 3).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("root at the origin: strip zero roots before classification")]
    RootAtOrigin,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("classification unstable: {0}")]
    Classification(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("generation failed: {0}")]
    Generation(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroPolynomial => "zero_polynomial",
            Error::RootAtOrigin => "root_at_origin",
            Error::Domain(_) => "domain",
            Error::PrecisionInsufficient(_) => "precision_insufficient",
            Error::Inconsistency(_) => "inconsistency",
            Error::Numeric(_) => "numeric",
            Error::Classification(_) => "classification",
            Error::Parse { .. } => "parse",
            Error::Generation(_) => "generation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
