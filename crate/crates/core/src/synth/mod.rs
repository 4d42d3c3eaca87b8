//! Synthetic signals: the logistic map under measurement or dynamic noise,
//! and a limit-cycle blood-pressure model with a parameter-sweep harness.

mod bp;
mod logistic;
mod sweep;

pub use bp::{detect_beats, generate_bp, generate_bp_run, BpModelParams, BpRun, RegimeRamp};
pub use logistic::{logistic_run, logistic_series, LogisticParams, LogisticRun, NoiseMode};
pub use sweep::{mean_slem, sweep_parameter, BpParam, SweepResult};
