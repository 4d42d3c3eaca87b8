//! Detecting changes in system dynamics from scalar time series by tracking
//! the mixing rate of empirical Markov chains.
//!
//! A signal is quantized into equal-width amplitude states, the transition
//! histogram between consecutive samples is row-normalized into a Markov
//! chain, and the modulus of the second largest eigenvalue (SLEM) of that
//! chain is followed over sliding windows. A shift in the SLEM distribution
//! marks a change in the underlying dynamics.
//!
//! Modules:
//! - [`timeseries`]: series container, CSV input, detrending, signal measures
//! - [`markov`]: quantizer, empirical chain, path simulation, structure measures
//! - [`spectral`]: eigenvalues, SLEM, stationary distribution, spectral norm
//! - [`synth`]: noisy logistic map and a synthetic blood-pressure model
//! - [`detect`]: windowed SLEM pipeline and the change-point detector
//! - [`rps`]: delay embedding and a Gaussian mixture baseline detector
//! - [`measures`]: per-window smoothness and chain-structure measures
//! - [`compare`]: both detectors over paired synthetic scenarios

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Index loops mirror the matrix formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod compare;
pub mod detect;
pub mod error;
pub mod markov;
pub mod matrix;
pub mod measures;
pub mod rps;
pub mod spectral;
pub mod synth;
pub mod timeseries;

pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use timeseries::TimeSeries;
