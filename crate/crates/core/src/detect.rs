//! Windowed SLEM pipeline and change-point detection on the SLEM series.
//!
//! The pipeline detrends the input with a trailing moving average, cuts it
//! into overlapping windows, builds one chain per window and records its
//! SLEM. The detector decimates that series to decorrelate neighbouring
//! windows, learns a threshold and raises an alarm once `next_window`
//! consecutive values fall strictly below it.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::markov::{build_quantizer, build_transition_matrix_with, Quantizer};
use crate::spectral::eigen_decompose;
use crate::timeseries::{detrend_moving_average, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuantizerScope {
    /// Each window is binned over its own min/max.
    #[default]
    PerWindow,
    /// One quantizer over the whole detrended series.
    Global,
}

impl FromStr for QuantizerScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "per-window" | "window" => Ok(Self::PerWindow),
            "global" => Ok(Self::Global),
            _ => Err(Error::InvalidParameter(format!(
                "unknown quantizer scope {s:?}"
            ))),
        }
    }
}

impl fmt::Display for QuantizerScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::PerWindow => "per-window",
            Self::Global => "global",
        })
    }
}

/// Windowing and chain parameters. Defaults correspond to 20 s windows and
/// one SLEM value per second at 100 Hz.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub window_samples: usize,
    pub stride_samples: usize,
    pub num_states: usize,
    /// Trailing moving-average length; `None` disables detrending. Clamped
    /// to the series length.
    pub detrend_window: Option<usize>,
    pub quantizer_scope: QuantizerScope,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            window_samples: 2000,
            stride_samples: 100,
            num_states: 10,
            detrend_window: Some(2000),
            quantizer_scope: QuantizerScope::PerWindow,
        }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_states < 2 {
            return Err(Error::InvalidParameter(
                "num_states must be at least 2".into(),
            ));
        }
        if self.window_samples < self.num_states {
            return Err(Error::InvalidParameter(format!(
                "window of {} samples is smaller than {} states",
                self.window_samples, self.num_states
            )));
        }
        if self.stride_samples == 0 {
            return Err(Error::InvalidParameter("stride must be at least 1".into()));
        }
        if self.detrend_window == Some(0) {
            return Err(Error::InvalidParameter(
                "detrend window must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// SLEM of one window; `slem` is `None` for a window with a constant signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlemPoint {
    pub t_start_s: f64,
    pub t_end_s: f64,
    pub slem: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SlemSeries {
    pub points: Vec<SlemPoint>,
}

impl SlemSeries {
    /// SLEM values with gaps removed.
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().filter_map(|p| p.slem).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `t_s,slem` with window start times; gaps are empty cells.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t_s,slem\n");
        for p in &self.points {
            match p.slem {
                Some(v) => writeln!(s, "{},{v:.16e}", p.t_start_s),
                None => writeln!(s, "{},", p.t_start_s),
            }
            .expect("write to string");
        }
        s
    }
}

/// Start offsets of all full windows.
pub fn window_starts(len: usize, window: usize, stride: usize) -> Vec<usize> {
    if len < window || stride == 0 {
        return Vec::new();
    }
    (0..=(len - window) / stride).map(|k| k * stride).collect()
}

/// Detrended copy of `ts` as configured.
pub fn preprocess(ts: &TimeSeries, cfg: &PipelineConfig) -> Result<TimeSeries> {
    match cfg.detrend_window {
        Some(w) => detrend_moving_average(ts, w.min(ts.len())),
        None => Ok(ts.clone()),
    }
}

/// Per-window SLEM of `ts`.
pub fn slem_series(ts: &TimeSeries, cfg: &PipelineConfig) -> Result<SlemSeries> {
    cfg.validate()?;
    if ts.len() < cfg.window_samples {
        return Err(Error::TooShort {
            needed: cfg.window_samples,
            got: ts.len(),
        });
    }
    let clean = preprocess(ts, cfg)?;
    let global = match cfg.quantizer_scope {
        QuantizerScope::PerWindow => None,
        QuantizerScope::Global => Some(build_quantizer(&clean, cfg.num_states)?),
    };
    let starts = window_starts(clean.len(), cfg.window_samples, cfg.stride_samples);
    let window_s = cfg.window_samples as f64 / clean.sample_rate_hz();

    let one = |&start: &usize| -> Result<SlemPoint> {
        let w = clean.slice(start, cfg.window_samples)?;
        let t_start_s = clean.time_of(start);
        Ok(SlemPoint {
            t_start_s,
            t_end_s: t_start_s + window_s,
            slem: window_slem(&w, cfg.num_states, global.as_ref())?,
        })
    };
    #[cfg(feature = "parallel")]
    let points: Result<Vec<SlemPoint>> = starts.par_iter().map(one).collect();
    #[cfg(not(feature = "parallel"))]
    let points: Result<Vec<SlemPoint>> = starts.iter().map(one).collect();
    Ok(SlemSeries { points: points? })
}

fn window_slem(w: &TimeSeries, m: usize, global: Option<&Quantizer>) -> Result<Option<f64>> {
    let q = match global {
        Some(q) => *q,
        None => match build_quantizer(w, m) {
            Ok(q) => q,
            Err(Error::DegenerateRange { .. }) => return Ok(None),
            Err(e) => return Err(e),
        },
    };
    let tm = build_transition_matrix_with(w, &q)?;
    Ok(Some(eigen_decompose(tm.probs())?.slem_modulus()))
}

/// Linear-interpolation percentile: rank `p/100 * (n-1)` into the sorted
/// values.
pub fn percentile(values: &[f64], p: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::TooShort { needed: 1, got: 0 });
    }
    if !(0.0..=100.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "percentile {p} outside [0, 100]"
        )));
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = p / 100.0 * (v.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let frac = rank - lo as f64;
    Ok(v[lo] + frac * (v[hi] - v[lo]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetectorMode {
    /// Threshold at the 95th percentile of the whole decimated series, with
    /// the original bounded scan length.
    #[default]
    Paper,
    /// Threshold at the `alpha`-th percentile of the baseline segment only,
    /// scanning to the end of the series.
    Corrected,
}

impl FromStr for DetectorMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Self::Paper),
            "corrected" => Ok(Self::Corrected),
            _ => Err(Error::InvalidParameter(format!(
                "unknown detector mode {s:?}"
            ))),
        }
    }
}

impl fmt::Display for DetectorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Paper => "paper",
            Self::Corrected => "corrected",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorConfig {
    /// Baseline length, in decimated values.
    pub baseline_window: usize,
    pub downsample_rate: usize,
    /// Tail mass of the corrected-mode threshold, in percent.
    pub alpha: f64,
    /// Consecutive below-threshold values needed for an alarm.
    pub next_window: usize,
    pub mode: DetectorMode,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            baseline_window: 75,
            downsample_rate: 4,
            alpha: 5.0,
            next_window: 4,
            mode: DetectorMode::Paper,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.downsample_rate == 0 {
            return Err(Error::InvalidParameter(
                "downsample rate must be at least 1".into(),
            ));
        }
        if self.next_window == 0 || self.baseline_window <= self.next_window {
            return Err(Error::InvalidParameter(
                "baseline window must exceed next window, which must be at least 1".into(),
            ));
        }
        if !(0.0..=100.0).contains(&self.alpha) {
            return Err(Error::InvalidParameter("alpha must lie in [0, 100]".into()));
        }
        Ok(())
    }

    /// Threshold for a decimated series under this configuration.
    pub fn threshold(&self, decimated: &[f64]) -> Result<f64> {
        match self.mode {
            DetectorMode::Paper => percentile(decimated, 95.0),
            DetectorMode::Corrected => percentile(&decimated[..self.baseline_window], self.alpha),
        }
    }
}

/// Keeps values `0, rate, 2*rate, ...`.
pub fn downsample<T: Copy>(values: &[T], rate: usize) -> Vec<T> {
    values.iter().step_by(rate.max(1)).copied().collect()
}

/// Outcome of a change detector on a scalar series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChangeDetection {
    pub detected: bool,
    /// 0-based index into the decimated series of the first value of the
    /// first alarm run.
    pub first_alarm_index: Option<usize>,
    pub threshold: f64,
}

/// Runs the detector on a gap-free SLEM sequence.
pub fn detect_change(slem: &[f64], cfg: &DetectorConfig) -> Result<ChangeDetection> {
    cfg.validate()?;
    let u = downsample(slem, cfg.downsample_rate);
    let needed = cfg.baseline_window + cfg.next_window + 1;
    if u.len() < needed {
        return Err(Error::TooShort {
            needed: needed * cfg.downsample_rate,
            got: slem.len(),
        });
    }
    let threshold = cfg.threshold(&u)?;
    Ok(scan(&u, threshold, cfg))
}

/// Runs the detector's scan with an explicit threshold in place of the
/// mode's percentile rule. The scan bound still follows the mode.
pub fn detect_change_with_threshold(
    slem: &[f64],
    threshold: f64,
    cfg: &DetectorConfig,
) -> Result<ChangeDetection> {
    cfg.validate()?;
    let u = downsample(slem, cfg.downsample_rate);
    let needed = cfg.baseline_window + cfg.next_window + 1;
    if u.len() < needed {
        return Err(Error::TooShort {
            needed: needed * cfg.downsample_rate,
            got: slem.len(),
        });
    }
    Ok(scan(&u, threshold, cfg))
}

fn scan(u: &[f64], threshold: f64, cfg: &DetectorConfig) -> ChangeDetection {
    let b = cfg.baseline_window;
    let nw = cfg.next_window;
    let positions = match cfg.mode {
        // The original loop bound covers floor((L - B) / N) - 1 start indices.
        DetectorMode::Paper => ((u.len() - b) / nw).saturating_sub(1),
        DetectorMode::Corrected => u.len() - b - nw + 1,
    };
    let first =
        (b..b + positions).find(|&start| u[start..start + nw].iter().all(|&v| v < threshold));
    ChangeDetection {
        detected: first.is_some(),
        first_alarm_index: first,
        threshold,
    }
}

/// One point of a detector's monitored statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub t_s: f64,
    pub value: Option<f64>,
}

/// Common result shape of the SLEM and phase-space detectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    pub detected: bool,
    pub first_alarm_index: Option<usize>,
    /// End time of the data behind the first alarm value.
    pub first_alarm_time_s: Option<f64>,
    pub threshold: f64,
    /// `paper`, `corrected` or `rps`.
    pub mode: String,
    /// Monitored statistic over time (SLEM per window, or window score).
    pub series: Vec<TracePoint>,
}

impl DetectionResult {
    pub fn csv_header() -> &'static str {
        "detected,first_alarm_index,first_alarm_time_s,threshold,mode"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:.16e},{}",
            self.detected,
            self.first_alarm_index
                .map(|i| i.to_string())
                .unwrap_or_default(),
            self.first_alarm_time_s
                .map(|t| t.to_string())
                .unwrap_or_default(),
            self.threshold,
            self.mode
        )
    }

    pub fn to_csv(&self) -> String {
        format!("{}\n{}\n", Self::csv_header(), self.csv_row())
    }

    /// `t_s,value` rows of the monitored statistic; gaps are empty cells.
    pub fn trace_csv(&self) -> String {
        let mut s = String::from("t_s,value\n");
        for p in &self.series {
            match p.value {
                Some(v) => writeln!(s, "{},{v:.16e}", p.t_s),
                None => writeln!(s, "{},", p.t_s),
            }
            .expect("write to string");
        }
        s
    }
}

/// Runs the detector on a windowed SLEM series. The series is decimated
/// first; gap windows are then dropped, so they neither count towards nor
/// break a run of below-threshold values.
pub fn detect_in_series(series: &SlemSeries, cfg: &DetectorConfig) -> Result<DetectionResult> {
    let kept: Vec<&SlemPoint> = downsample(
        &series.points.iter().collect::<Vec<_>>(),
        cfg.downsample_rate,
    )
    .into_iter()
    .filter(|p| p.slem.is_some())
    .collect();
    let values: Vec<f64> = kept.iter().map(|p| p.slem.expect("filtered")).collect();
    // Already decimated.
    let inner = DetectorConfig {
        downsample_rate: 1,
        ..*cfg
    };
    let det = detect_change(&values, &inner).map_err(|e| match e {
        Error::TooShort { needed, .. } => Error::TooShort {
            needed: needed * cfg.downsample_rate,
            got: series.points.len(),
        },
        e => e,
    })?;
    Ok(DetectionResult {
        detected: det.detected,
        first_alarm_index: det.first_alarm_index,
        first_alarm_time_s: det.first_alarm_index.map(|i| kept[i].t_end_s),
        threshold: det.threshold,
        mode: cfg.mode.to_string(),
        series: series
            .points
            .iter()
            .map(|p| TracePoint {
                t_s: p.t_start_s,
                value: p.slem,
            })
            .collect(),
    })
}

/// Pipeline plus detector on a raw signal.
pub fn detect_signal(
    ts: &TimeSeries,
    pipeline: &PipelineConfig,
    detector: &DetectorConfig,
) -> Result<DetectionResult> {
    let series = slem_series(ts, pipeline)?;
    detect_in_series(&series, detector)
}
