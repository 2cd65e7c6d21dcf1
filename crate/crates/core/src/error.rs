use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("argument {value} outside supported range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("degenerate edge: {0}")]
    DegenerateEdge(String),

    #[error("eigensolver failed on trial {trial}")]
    EigenFailure { trial: usize },

    #[error("too many failed trials: {failed} of {trials}")]
    TooManyFailures { failed: usize, trials: usize },

    #[error("Painleve II integration blew up at s = {s} (|q| = {q}); check step and boundary")]
    BlowUp { s: f64, q: f64 },

    #[error("ill-conditioned determinant (condition estimate {condition:.3e}); perturb the spectrum or use the equal-spectrum route")]
    IllConditioned { condition: f64 },

    #[error("quadrature did not converge after {refinements} refinements (error estimate {error:.3e})")]
    QuadratureNotConverged { refinements: usize, error: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
