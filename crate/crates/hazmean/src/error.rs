//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by model evaluation, quadrature, estimation, and parsing.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation point lies outside the open interior of the model support.
    #[error("t = {t} is outside the support ({left}, {right})")]
    OutOfSupport { t: f64, left: f64, right: f64 },

    /// A tabulated hazard entry is zero or negative.
    #[error("tabulated hazard at t = {t} is non-positive ({rate})")]
    NonPositiveRate { t: f64, rate: f64 },

    /// The adaptive integrator could not reach the requested tolerance.
    #[error("quadrature failed over [{lo}, {hi}]: {reason}")]
    QuadratureFailure { lo: f64, hi: f64, reason: String },

    /// A harmonic-family functional is divergent where a finite value is required.
    #[error("functional diverges on the requested grid")]
    DivergentFunctional,

    /// Component supports do not share a common left endpoint.
    #[error("component supports have mixed left endpoints ({0} vs {1})")]
    MixedSupports(f64, f64),

    /// Discrete mean of an empty list.
    #[error("empty value list")]
    EmptyList,

    /// Discrete mean over a list containing a non-positive entry.
    #[error("non-positive entry {0} in value list")]
    NonPositiveEntry(f64),

    /// Malformed input data; `row` is 1-based and excludes the header.
    #[error("parse error at row {row}: {message}")]
    ParseError { row: usize, message: String },

    /// Input data set has no rows.
    #[error("input data is empty")]
    EmptyData,

    /// Every observation in the sample is censored.
    #[error("all observations are censored")]
    AllCensored,

    /// Kernel bandwidth leaves every window with too few events.
    #[error("bandwidth too small: {0}")]
    BandwidthTooSmall(String),

    /// Invalid model or configuration parameter.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Invalid evaluation grid.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// File I/O failure (path and OS message).
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
