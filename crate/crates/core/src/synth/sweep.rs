use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::bp::{generate_bp, BpModelParams};
use crate::detect::{slem_series, PipelineConfig};
use crate::error::{Error, Result};
use crate::timeseries::{mean, pearson_correlation};

/// Scalar model parameters that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BpParam {
    Sfecg,
    HrMean,
    HrStd,
    LfHfRatio,
    /// Angle of the fourth extremum (S), degrees.
    ThetaS,
    BpOffset,
    BpRange,
}

impl BpParam {
    pub const ALL: [BpParam; 7] = [
        BpParam::Sfecg,
        BpParam::HrMean,
        BpParam::HrStd,
        BpParam::LfHfRatio,
        BpParam::ThetaS,
        BpParam::BpOffset,
        BpParam::BpRange,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BpParam::Sfecg => "sfecg",
            BpParam::HrMean => "hrmean",
            BpParam::HrStd => "hrstd",
            BpParam::LfHfRatio => "lfhfratio",
            BpParam::ThetaS => "theta_s",
            BpParam::BpOffset => "bp_offset",
            BpParam::BpRange => "bp_range",
        }
    }

    pub fn apply(&self, base: &BpModelParams, value: f64) -> BpModelParams {
        let mut p = base.clone();
        match self {
            BpParam::Sfecg => p.sfecg_hz = value,
            BpParam::HrMean => p.hrmean_bpm = value,
            BpParam::HrStd => p.hrstd_bpm = value,
            BpParam::LfHfRatio => p.lfhfratio = value,
            BpParam::ThetaS => p.theta_deg[3] = value,
            BpParam::BpOffset => p.bp_offset_mmhg = value,
            BpParam::BpRange => p.bp_range_mmhg = value,
        }
        p
    }
}

impl FromStr for BpParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BpParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown model parameter {s:?}")))
    }
}

impl fmt::Display for BpParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub param: BpParam,
    pub values: Vec<f64>,
    pub mean_slem: Vec<f64>,
    /// Pearson correlation between parameter value and mean SLEM.
    pub r: f64,
    /// Least-squares slope of mean SLEM against the parameter.
    pub slope: f64,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut s = format!("{},mean_slem\n", self.param);
        for (v, m) in self.values.iter().zip(&self.mean_slem) {
            s.push_str(&format!("{v},{m:.16e}\n"));
        }
        s
    }

    /// `param,r,slope` with one data row.
    pub fn summary_csv(&self) -> String {
        format!(
            "param,r,slope\n{},{:.16e},{:.16e}\n",
            self.param, self.r, self.slope
        )
    }
}

/// Mean windowed SLEM of a generated waveform.
pub fn mean_slem(p: &BpModelParams, cfg: &PipelineConfig) -> Result<f64> {
    let ts = generate_bp(p)?;
    let values = slem_series(&ts, cfg)?.values();
    if values.is_empty() {
        return Err(Error::TooShort {
            needed: cfg.window_samples,
            got: ts.len(),
        });
    }
    Ok(mean(&values))
}

/// Varies one parameter with every other parameter (and the seed) held at
/// `base`, and relates the mean windowed SLEM to it.
pub fn sweep_parameter(
    base: &BpModelParams,
    param: BpParam,
    values: &[f64],
    cfg: &PipelineConfig,
) -> Result<SweepResult> {
    if values.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "a sweep needs at least 4 values, got {}",
            values.len()
        )));
    }
    let run = |&v: &f64| mean_slem(&param.apply(base, v), cfg);
    #[cfg(feature = "parallel")]
    let slems: Result<Vec<f64>> = values.par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let slems: Result<Vec<f64>> = values.iter().map(run).collect();
    let mean_slem = slems?;
    let r = pearson_correlation(values, &mean_slem)?;
    let slope = least_squares_slope(values, &mean_slem);
    Ok(SweepResult {
        param,
        values: values.to_vec(),
        mean_slem,
        r,
        slope,
    })
}

pub(crate) fn least_squares_slope(x: &[f64], y: &[f64]) -> f64 {
    let (mx, my) = (mean(x), mean(y));
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}
