use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::timeseries::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseMode {
    #[default]
    None,
    /// Noise added to each observation; the orbit itself is untouched.
    Measurement,
    /// Noise added inside the recurrence and propagated.
    Dynamic,
}

impl FromStr for NoiseMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "measurement" => Ok(Self::Measurement),
            "dynamic" => Ok(Self::Dynamic),
            _ => Err(Error::InvalidParameter(format!("unknown noise mode {s:?}"))),
        }
    }
}

impl fmt::Display for NoiseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::Measurement => "measurement",
            Self::Dynamic => "dynamic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    pub mu: f64,
    pub x0: f64,
    pub n: usize,
    pub noise_mode: NoiseMode,
    pub noise_std: f64,
    pub seed: u64,
}

impl Default for LogisticParams {
    fn default() -> Self {
        Self {
            mu: 3.8,
            x0: 0.3,
            n: 1000,
            noise_mode: NoiseMode::None,
            noise_std: 0.0,
            seed: 0,
        }
    }
}

impl LogisticParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu > 0.0 && self.mu <= 4.0) {
            return Err(Error::InvalidParameter(format!(
                "mu must lie in (0, 4], got {}",
                self.mu
            )));
        }
        if !(self.x0 > 0.0 && self.x0 < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "x0 must lie in (0, 1), got {}",
                self.x0
            )));
        }
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        if !(self.noise_std >= 0.0 && self.noise_std.is_finite()) {
            return Err(Error::InvalidParameter(
                "noise_std must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// The pieces of one logistic-map run.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticRun {
    /// Underlying states `x_n`.
    pub orbit: Vec<f64>,
    /// Noise draws `e_n` (all zero without noise).
    pub noise: Vec<f64>,
    /// What is observed: `x_n + e_n` for measurement noise, `x_n` otherwise.
    pub observed: Vec<f64>,
}

/// Runs the recurrence `x_{n+1} = mu x_n (1 - x_n)` with the configured
/// noise. Dynamic-noise states are clamped to `[0, 1]`.
pub fn logistic_run(p: &LogisticParams) -> Result<LogisticRun> {
    p.validate()?;
    let normal = Normal::new(0.0, p.noise_std)
        .map_err(|e| Error::InvalidParameter(format!("noise: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut draw = || match p.noise_mode {
        NoiseMode::None => 0.0,
        _ => normal.sample(&mut rng),
    };

    let mut orbit = Vec::with_capacity(p.n);
    let mut noise = Vec::with_capacity(p.n);
    let mut x = p.x0;
    for k in 0..p.n {
        if k > 0 {
            x = p.mu * x * (1.0 - x);
        }
        let e = draw();
        if p.noise_mode == NoiseMode::Dynamic && k > 0 {
            x = (x + e).clamp(0.0, 1.0);
        }
        orbit.push(x);
        noise.push(if p.noise_mode == NoiseMode::Dynamic && k == 0 {
            0.0
        } else {
            e
        });
    }
    let observed = match p.noise_mode {
        NoiseMode::Measurement => orbit.iter().zip(&noise).map(|(x, e)| x + e).collect(),
        _ => orbit.clone(),
    };
    Ok(LogisticRun {
        orbit,
        noise,
        observed,
    })
}

/// Observed logistic sequence at 1 Hz (sample index as time).
pub fn logistic_series(p: &LogisticParams) -> Result<TimeSeries> {
    TimeSeries::new(logistic_run(p)?.observed, 1.0)
}
