use thiserror::Error;

/// Errors produced by the AVE solver stack.
#[derive(Debug, Error)]
pub enum AveError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not positive definite: non-positive pivot {value:e} at index {pivot}")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("inverse power iteration did not converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "bisection bracket [{lo}, {hi}] has no sign change (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})"
    )]
    BracketFailure {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("iteration diverged: non-finite iterate at iteration {iteration}")]
    Divergence { iteration: usize },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("no grid parameter produced a convergent run")]
    NoConvergentParameter,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("matrix is not symmetric: entry ({row}, {col}) has no matching transpose entry")]
    Symmetry { row: usize, col: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, AveError>;
