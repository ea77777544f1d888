use thiserror::Error;

/// Errors surfaced by the solver and analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Exponent triple violates a regime constraint.
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),

    /// Grid geometry rejected at construction.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Scalar-level precondition violated (p range, M > 0, degenerate 0/0).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Field, kernel and exponents do not belong to the same discretization.
    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    /// An iterative solve hit its cap before reaching tolerance.
    #[error("no convergence after {iterations} iterations (measure {measure:e}, tolerance {tolerance:e})")]
    NonConvergence {
        iterations: usize,
        measure: f64,
        tolerance: f64,
    },

    /// Fit window empty, too short, nonpositive data or non-monotone series.
    #[error("unusable fit window: {0}")]
    Window(String),

    /// Trajectories cannot be compared point by point.
    #[error("misaligned trajectories: {0}")]
    MisalignedTrajectories(String),
}

pub type Result<T> = std::result::Result<T, Error>;
