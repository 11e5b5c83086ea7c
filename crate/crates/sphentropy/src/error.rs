//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested band limit exceeds what the sampling grid can resolve exactly.
    #[error("band limit {requested} exceeds grid capacity {supported}")]
    BandLimit { requested: u32, supported: u32 },

    /// Truncation order larger than the pyramid's band limit.
    #[error("truncation order {order} exceeds band limit {band_limit}")]
    OrderExceedsBandLimit { order: u32, band_limit: u32 },

    /// Two operands do not share grid/channel layout.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// An allocation would exceed the configured memory budget.
    #[error("memory budget exceeded: requested {requested_bytes} bytes, budget {budget_bytes}")]
    ResourceBudget {
        requested_bytes: usize,
        budget_bytes: usize,
    },

    /// Input carries no usable signal (e.g. zero total energy).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// An iterative criterion did not fire within the available range.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// Malformed input file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Invalid configuration or request parameters.
    #[error("validation error: {0}")]
    Validation(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
