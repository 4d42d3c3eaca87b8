//! Reconstructed phase space (RPS) change detection: time-delay embedding of
//! the signal, a Gaussian mixture fit to a baseline segment, and an alarm
//! when the likelihood of a later window drops below what the baseline
//! itself produced.

mod gmm;

pub use gmm::{fit_gmm, score_loglik, GaussianComponent, GmmModel, COVARIANCE_FLOOR};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::detect::{percentile, DetectionResult, TracePoint};
use crate::error::{Error, Result};
use crate::timeseries::TimeSeries;

/// Delay vectors stored row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    data: Vec<f64>,
    d: usize,
    tau: usize,
}

impl Embedding {
    /// Wraps explicit points (all of one dimension). The lag is recorded as 1.
    pub fn from_points<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let d = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if d == 0 {
            return Err(Error::InvalidParameter(
                "points must be non-empty vectors".into(),
            ));
        }
        let mut data = Vec::with_capacity(rows.len() * d);
        for r in rows {
            let r = r.as_ref();
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { data, d, tau: 1 })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.data[k * self.d..(k + 1) * self.d]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.data.chunks_exact(self.d)
    }
}

/// Delay vectors of `samples`: point `k` is `[x_k, x_{k+tau}, ..., x_{k+(d-1)tau}]`.
pub fn embed_samples(samples: &[f64], d: usize, tau: usize) -> Result<Embedding> {
    if d == 0 || tau == 0 {
        return Err(Error::InvalidParameter(
            "d and tau must be at least 1".into(),
        ));
    }
    let span = (d - 1) * tau;
    if samples.len() <= span {
        return Err(Error::TooShort {
            needed: span + 1,
            got: samples.len(),
        });
    }
    let count = samples.len() - span;
    let mut data = Vec::with_capacity(count * d);
    for k in 0..count {
        data.extend((0..d).map(|j| samples[k + j * tau]));
    }
    Ok(Embedding { data, d, tau })
}

pub fn embed(ts: &TimeSeries, d: usize, tau: usize) -> Result<Embedding> {
    embed_samples(ts.samples(), d, tau)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RpsConfig {
    /// Leading span used to fit the mixture and set the threshold.
    pub baseline_span_s: f64,
    pub d: usize,
    pub tau: usize,
    pub k: usize,
    /// Percentile of the baseline window scores used as threshold.
    pub threshold_percentile: f64,
    pub window_s: f64,
    /// Scan windows that must score below the threshold in a row.
    pub consecutive_windows: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for RpsConfig {
    fn default() -> Self {
        Self {
            baseline_span_s: 300.0,
            d: 3,
            tau: 1,
            k: 4,
            threshold_percentile: 1.0,
            window_s: 5.0,
            consecutive_windows: 4,
            seed: 0,
            max_iter: 200,
            tol: 1e-6,
        }
    }
}

impl RpsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.baseline_span_s >= 10.0) {
            return Err(Error::InvalidParameter(format!(
                "baseline span must be at least 10 s, got {}",
                self.baseline_span_s
            )));
        }
        if !(self.window_s > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "window_s must be positive, got {}",
                self.window_s
            )));
        }
        if !(0.0..=100.0).contains(&self.threshold_percentile) {
            return Err(Error::InvalidParameter(format!(
                "threshold percentile {} outside [0, 100]",
                self.threshold_percentile
            )));
        }
        if self.d == 0 || self.tau == 0 || self.k == 0 || self.consecutive_windows == 0 {
            return Err(Error::InvalidParameter(
                "d, tau, K and consecutive_windows must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Fits the baseline model and scores non-overlapping windows. An alarm is
/// raised by `consecutive_windows` scan windows in a row scoring below the
/// threshold. The returned trace holds every window (baseline first);
/// `first_alarm_index` is the first window of the alarm run, indexed into
/// that trace, and the alarm time is the end of that window.
pub fn rps_detect(ts: &TimeSeries, cfg: &RpsConfig) -> Result<DetectionResult> {
    cfg.validate()?;
    let fs = ts.sample_rate_hz();
    let baseline_len = (cfg.baseline_span_s * fs).round() as usize;
    let window_len = (cfg.window_s * fs).round() as usize;
    let span = (cfg.d - 1) * cfg.tau;
    if window_len <= span {
        return Err(Error::InvalidParameter(format!(
            "a {window_len}-sample window cannot hold a delay vector spanning {} samples",
            span + 1
        )));
    }
    if baseline_len < window_len || baseline_len > ts.len() {
        return Err(Error::TooShort {
            needed: baseline_len.max(window_len),
            got: ts.len(),
        });
    }
    let x = ts.samples();
    let model = fit_gmm(
        &embed_samples(&x[..baseline_len], cfg.d, cfg.tau)?,
        cfg.k,
        cfg.seed,
        cfg.max_iter,
        cfg.tol,
    )?;

    let num_baseline = baseline_len / window_len;
    let num_scan = (x.len() - baseline_len) / window_len;
    let starts: Vec<usize> = (0..num_baseline)
        .map(|i| i * window_len)
        .chain((0..num_scan).map(|i| baseline_len + i * window_len))
        .collect();
    let score = |&start: &usize| -> Result<f64> {
        score_loglik(
            &model,
            &embed_samples(&x[start..start + window_len], cfg.d, cfg.tau)?,
        )
    };
    #[cfg(feature = "parallel")]
    let scores = starts.par_iter().map(score).collect::<Result<Vec<f64>>>()?;
    #[cfg(not(feature = "parallel"))]
    let scores = starts.iter().map(score).collect::<Result<Vec<f64>>>()?;
    let threshold = percentile(&scores[..num_baseline], cfg.threshold_percentile)?;

    let c = cfg.consecutive_windows;
    let first = (num_baseline..scores.len().saturating_sub(c - 1))
        .find(|&i| scores[i..i + c].iter().all(|&v| v < threshold));
    let series = starts
        .iter()
        .zip(&scores)
        .map(|(&s, &v)| TracePoint {
            t_s: ts.time_of(s),
            value: Some(v),
        })
        .collect();
    let first_alarm = first.map(|i| (i, ts.time_of(starts[i]) + window_len as f64 / fs));
    Ok(DetectionResult {
        detected: first_alarm.is_some(),
        first_alarm_index: first_alarm.map(|a| a.0),
        first_alarm_time_s: first_alarm.map(|a| a.1),
        threshold,
        mode: "rps".into(),
        series,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn embedding_examples() {
        let e = embed_samples(&[1.0, 2.0, 3.0, 4.0, 5.0], 2, 2).unwrap();
        let pts: Vec<&[f64]> = e.iter().collect();
        assert_eq!(pts, vec![&[1.0, 3.0][..], &[2.0, 4.0], &[3.0, 5.0]]);
        let x: Vec<f64> = (0..100).map(f64::from).collect();
        assert_eq!(embed_samples(&x, 3, 1).unwrap().len(), 98);
        assert!(matches!(
            embed_samples(&x[..4], 3, 2),
            Err(Error::TooShort { .. })
        ));
        assert_eq!(embed_samples(&x[..5], 3, 2).unwrap().len(), 1);
    }

    proptest! {
        #[test]
        fn embedding_index_bookkeeping(
            x in prop::collection::vec(-1e3f64..1e3, 1..200),
            d in 1usize..6,
            tau in 1usize..6,
        ) {
            match embed_samples(&x, d, tau) {
                Ok(e) => {
                    prop_assert_eq!(e.len(), x.len() - (d - 1) * tau);
                    for (k, p) in e.iter().enumerate() {
                        for (j, &v) in p.iter().enumerate() {
                            prop_assert_eq!(v, x[k + j * tau]);
                        }
                    }
                    if d == 1 {
                        let back: Vec<f64> = e.iter().map(|p| p[0]).collect();
                        prop_assert_eq!(back, x);
                    }
                }
                Err(_) => prop_assert!(x.len() <= (d - 1) * tau),
            }
        }
    }

    #[test]
    fn baseline_never_alarms() {
        let x: Vec<f64> = (0..6000)
            .map(|i| (i as f64 * 0.37).sin() + 0.1 * (i as f64 * 0.011).cos())
            .collect();
        let ts = TimeSeries::new(x, 100.0).unwrap();
        let cfg = RpsConfig {
            baseline_span_s: 30.0,
            ..Default::default()
        };
        let r = rps_detect(&ts, &cfg).unwrap();
        assert_eq!(r.series.len(), 12);
        assert_eq!(r.mode, "rps");
        if let Some(i) = r.first_alarm_index {
            assert!(i >= 6);
            assert!(r.first_alarm_time_s.unwrap() > 30.0);
        }
    }

    #[test]
    fn amplitude_change_is_detected() {
        let x: Vec<f64> = (0..6000)
            .map(|i| {
                let a = if i < 4000 { 1.0 } else { 3.0 };
                // Period divides the window, so every baseline window scores alike.
                a * (i as f64 * std::f64::consts::PI / 25.0).sin()
            })
            .collect();
        let ts = TimeSeries::new(x, 100.0).unwrap();
        let cfg = RpsConfig {
            baseline_span_s: 30.0,
            consecutive_windows: 1,
            ..Default::default()
        };
        let r = rps_detect(&ts, &cfg).unwrap();
        assert!(r.detected);
        assert_eq!(r.first_alarm_time_s, Some(45.0));
    }

    #[test]
    fn rejects_bad_configs() {
        let ts = TimeSeries::new(vec![0.0; 100], 10.0).unwrap();
        let bad = [
            RpsConfig {
                baseline_span_s: 5.0,
                ..Default::default()
            },
            RpsConfig {
                window_s: 0.0,
                ..Default::default()
            },
            RpsConfig {
                threshold_percentile: 101.0,
                ..Default::default()
            },
            RpsConfig {
                consecutive_windows: 0,
                ..Default::default()
            },
            RpsConfig {
                baseline_span_s: 20.0,
                window_s: 0.1,
                ..Default::default()
            },
        ];
        for c in bad {
            assert!(rps_detect(&ts, &c).is_err());
        }
    }
}
