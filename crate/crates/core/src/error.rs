use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at argument {0}")]
    Pole(f64),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("non-finite input: {0}")]
    NonFinite(String),
    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("exponential factor overflows standard precision (Re X = {0})")]
    Overflow(f64),
    #[error("degenerate parameters: {0}")]
    DegenerateParameter(String),
    #[error("arg z = {arg} outside validity sector |arg z| < {limit}")]
    SectorViolation { arg: f64, limit: f64 },
    #[error("working precision insufficient: {0}")]
    PrecisionInsufficient(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence { .. } | Error::PrecisionInsufficient(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
