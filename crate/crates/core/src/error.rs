use std::path::PathBuf;

/// Errors produced by the analysis pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series too short: need at least {needed} samples, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("degenerate range: max == min == {value}, a constant series cannot be quantized")]
    DegenerateRange { value: f64 },

    #[error("zero variance in input, quantity is undefined")]
    ZeroVariance,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state {state} has no outgoing transitions (entered at step {step})")]
    ZeroRow { state: usize, step: usize },

    #[error("eigenvalue iteration did not converge within {iterations} QR sweeps")]
    NoConvergence { iterations: usize },

    #[error("chain is reducible: eigenvalue 1 has multiplicity {multiplicity}")]
    Reducible { multiplicity: usize },

    #[error("integration produced a non-finite state at t = {time_s:.4} s")]
    Blowup { time_s: f64 },

    #[error("covariance collapsed in component {component}")]
    CovarianceCollapse { component: usize },
}

impl Error {
    /// True for failures of a numerical method on otherwise valid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::Blowup { .. }
                | Error::CovarianceCollapse { .. }
                | Error::Reducible { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
