use thiserror::Error;

/// Errors raised by the geometric and functional routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("the origin is not an interior point of the body")]
    OriginNotInterior,

    #[error("unsupported shape for {op}: {shape}")]
    UnsupportedShape { op: &'static str, shape: &'static str },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("divergent integral: {0}")]
    Divergent(String),

    #[error("functions live on different bodies; use the grid route")]
    BodyMismatch,

    #[error("barycenter is not at the origin (|bar| = {norm:.3e})")]
    OffCenter { norm: f64 },

    #[error("root finding did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("grid too small: boundary mass leakage {leakage:.3e} exceeds {tolerance:.1e}")]
    GridTooSmall { leakage: f64, tolerance: f64 },

    #[error("grid output range overflow: {0}")]
    RangeOverflow(String),

    #[error("degenerate level set")]
    DegenerateLevel,

    #[error("linear program is infeasible: {0}")]
    Infeasible(String),

    #[error("problem exceeds size limit: {0}")]
    SizeLimit(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
