use std::path::PathBuf;

/// Errors produced anywhere in the workbench.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("sampled grids have no closed-form coefficients; use sample_coeffs instead")]
    SampledGridHasNoClosedForm,

    #[error("grid of {points} points is too small for K = {k} (need at least {needed})")]
    GridTooSmall { points: usize, k: usize, needed: usize },

    #[error("invalid sampling grid: {0}")]
    InvalidGrid(String),

    #[error("window length {delta} is outside ({resolution}, 2π]")]
    WindowOutOfRange { delta: f64, resolution: f64 },

    #[error("cannot parse symbol label {label:?}: {reason}")]
    SymbolLabel { label: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not Hermitian: ‖M − M*‖_F = {asymmetry:e} exceeds {tolerance:e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("tridiagonal QL iteration did not converge for eigenvalue {index} after {iterations} sweeps")]
    NoConvergence { index: usize, iterations: usize },

    #[error("cluster classification needs at least 4 strictly increasing sizes, got {0:?}")]
    TooFewSizes(Vec<usize>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors that stem from a bad configuration or command line
    /// rather than from a failed computation.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::SymbolLabel { .. }
                | Error::Config(_)
                | Error::InvalidGrid(_)
                | Error::GridTooSmall { .. }
                | Error::WindowOutOfRange { .. }
                | Error::InvalidArgument(_)
                | Error::SampledGridHasNoClosedForm
                | Error::TooFewSizes(_)
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
