use thiserror::Error;

/// Errors raised by metric evaluation, map construction and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("angle vertex coincides with one of the endpoints")]
    DegenerateVertex,

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("points coincide")]
    CoincidentPoints,

    #[error("degenerate point configuration: {0}")]
    DegeneratePoints(String),

    #[error("point lies outside the domain")]
    OutsideDomain,

    #[error("point lies on the domain boundary")]
    OnBoundary,

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("argument {value} outside {interval}")]
    OutOfInterval { value: f64, interval: &'static str },

    #[error("metric kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("map sends a sample point outside the target domain (excess {excess:e})")]
    MapDomainMismatch { excess: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("internal numerical inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
