//! Uniformly sampled scalar series, CSV ingestion, detrending and the scalar
//! signal measures (smoothness, correlation, autocorrelation, shock index).

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A uniformly sampled real-valued signal.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
    sample_rate_hz: f64,
    start_time_s: f64,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        Self::with_start(samples, sample_rate_hz, 0.0)
    }

    pub fn with_start(samples: Vec<f64>, sample_rate_hz: f64, start_time_s: f64) -> Result<Self> {
        if !(sample_rate_hz > 0.0 && sample_rate_hz.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "sample rate must be positive, got {sample_rate_hz}"
            )));
        }
        if samples.is_empty() {
            return Err(Error::TooShort { needed: 1, got: 0 });
        }
        if let Some(k) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("sample {k} is not finite")));
        }
        if !start_time_s.is_finite() {
            return Err(Error::InvalidParameter("start time must be finite".into()));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
            start_time_s,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn start_time_s(&self) -> f64 {
        self.start_time_s
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Time of sample `k` in seconds.
    pub fn time_of(&self, k: usize) -> f64 {
        self.start_time_s + k as f64 / self.sample_rate_hz
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }

    /// Sub-series `[start, start + len)`, keeping the time axis.
    pub fn slice(&self, start: usize, len: usize) -> Result<Self> {
        if len == 0 || start + len > self.samples.len() {
            return Err(Error::TooShort {
                needed: start + len.max(1),
                got: self.samples.len(),
            });
        }
        Ok(Self {
            samples: self.samples[start..start + len].to_vec(),
            sample_rate_hz: self.sample_rate_hz,
            start_time_s: self.time_of(start),
        })
    }

    /// Same time axis, new sample values.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            samples: self.samples.iter().map(|&x| f(x)).collect(),
            ..self.clone()
        }
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            })
    }

    /// One column under `header`, each value in shortest round-trip form,
    /// so [`parse_csv`] reads back the identical series.
    pub fn to_csv(&self, header: &str) -> String {
        let mut s = format!("{header}\n");
        for v in &self.samples {
            s.push_str(&format!("{v}\n"));
        }
        s
    }
}

/// Column selector for [`load_csv`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    Index(usize),
    Name(String),
}

impl FromStr for Column {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(s.to_string()),
        })
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Index(i) => write!(f, "{i}"),
            Column::Name(n) => f.write_str(n),
        }
    }
}

/// Reads one column of a CSV file. An optional single header row is
/// recognised when the selected cell of the first row is not numeric.
/// Rows are reported 1-based, counting the header.
pub fn load_csv(
    path: impl AsRef<Path>,
    column: &Column,
    sample_rate_hz: f64,
) -> Result<TimeSeries> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_csv(&text, column, sample_rate_hz)
}

/// [`load_csv`] on in-memory text.
pub fn parse_csv(text: &str, column: &Column, sample_rate_hz: f64) -> Result<TimeSeries> {
    if !(sample_rate_hz > 0.0 && sample_rate_hz.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sample rate must be positive, got {sample_rate_hz}"
        )));
    }
    let mut col_idx = match column {
        Column::Index(i) => Some(*i),
        Column::Name(_) => None,
    };
    let mut samples = Vec::new();
    let mut first = true;
    for (lineno, line) in text.lines().enumerate() {
        let row = lineno + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if first {
            first = false;
            match column {
                Column::Name(name) => {
                    let idx = cells.iter().position(|c| c.trim_matches('"') == name);
                    match idx {
                        Some(i) => {
                            col_idx = Some(i);
                            continue;
                        }
                        None => {
                            return Err(Error::Parse {
                                row,
                                message: format!("no column named {name:?} in header"),
                            })
                        }
                    }
                }
                Column::Index(i) => {
                    // Header row when the selected cell is not a number.
                    if let Some(cell) = cells.get(*i) {
                        if cell.parse::<f64>().is_err() && !cell.is_empty() && row == 1 {
                            let numeric_elsewhere = cells.iter().any(|c| c.parse::<f64>().is_ok());
                            if !numeric_elsewhere {
                                continue;
                            }
                        }
                    }
                }
            }
        }
        let idx = col_idx.expect("column index resolved from header");
        let cell = cells.get(idx).ok_or_else(|| Error::Parse {
            row,
            message: format!("missing column {idx}"),
        })?;
        let value: f64 = cell.parse().map_err(|_| Error::Parse {
            row,
            message: format!("cannot parse {cell:?} as a number"),
        })?;
        if !value.is_finite() {
            return Err(Error::Parse {
                row,
                message: format!("non-finite value {cell:?}"),
            });
        }
        samples.push(value);
    }
    TimeSeries::new(samples, sample_rate_hz)
}

/// Subtracts the trailing (causal) moving average over `window` samples.
pub fn detrend_moving_average(ts: &TimeSeries, window: usize) -> Result<TimeSeries> {
    if window == 0 {
        return Err(Error::InvalidParameter(
            "detrend window must be at least 1".into(),
        ));
    }
    if window > ts.len() {
        return Err(Error::TooShort {
            needed: window,
            got: ts.len(),
        });
    }
    if window == 1 {
        return TimeSeries::with_start(vec![0.0; ts.len()], ts.sample_rate_hz(), ts.start_time_s());
    }
    // Work relative to the first sample so constant stretches cancel exactly.
    let origin = ts.samples()[0];
    let x: Vec<f64> = ts.samples().iter().map(|v| v - origin).collect();
    let mut out = Vec::with_capacity(x.len());
    let mut sum = 0.0;
    for k in 0..x.len() {
        sum += x[k];
        if k >= window {
            sum -= x[k - window];
        }
        // Periodic exact recomputation bounds running-sum drift.
        if k % 4096 == 4095 {
            let lo = (k + 1).saturating_sub(window);
            sum = x[lo..=k].iter().sum();
        }
        let n = (k + 1).min(window) as f64;
        out.push(x[k] - sum / n);
    }
    TimeSeries::with_start(out, ts.sample_rate_hz(), ts.start_time_s())
}

/// Sums and population variances of the 1st and 2nd successive differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothnessReport {
    pub s1: f64,
    pub s2: f64,
    pub v1: f64,
    pub v2: f64,
}

pub fn smoothness(ts: &TimeSeries) -> Result<SmoothnessReport> {
    if ts.len() < 3 {
        return Err(Error::TooShort {
            needed: 3,
            got: ts.len(),
        });
    }
    let d1: Vec<f64> = ts.samples().windows(2).map(|w| w[1] - w[0]).collect();
    let d2: Vec<f64> = d1.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(SmoothnessReport {
        s1: d1.iter().sum(),
        s2: d2.iter().sum(),
        v1: population_variance(&d1),
        v2: population_variance(&d2),
    })
}

pub(crate) fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Population (1/n) variance; never negative.
pub fn population_variance(x: &[f64]) -> f64 {
    if x.is_empty() {
        return 0.0;
    }
    let m = mean(x);
    (x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / x.len() as f64).max(0.0)
}

/// Pearson product-moment correlation, clamped to [-1, 1].
pub fn pearson_correlation(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: a.len(),
        });
    }
    let (ma, mb) = (mean(a), mean(b));
    let mut sab = 0.0;
    let mut saa = 0.0;
    let mut sbb = 0.0;
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa <= 0.0 || sbb <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sab / (saa.sqrt() * sbb.sqrt())).clamp(-1.0, 1.0))
}

/// Elementwise heart rate over systolic pressure.
pub fn shock_index(heart_rate_bpm: &[f64], systolic_bp_mmhg: &[f64]) -> Result<Vec<f64>> {
    if heart_rate_bpm.len() != systolic_bp_mmhg.len() {
        return Err(Error::DimensionMismatch {
            expected: heart_rate_bpm.len(),
            got: systolic_bp_mmhg.len(),
        });
    }
    heart_rate_bpm
        .iter()
        .zip(systolic_bp_mmhg)
        .map(|(&hr, &sbp)| {
            if sbp > 0.0 {
                Ok(hr / sbp)
            } else {
                Err(Error::InvalidParameter(format!(
                    "systolic pressure must be positive, got {sbp}"
                )))
            }
        })
        .collect()
}

/// Normalized autocorrelation for lags `0..=max_lag`; entry 0 is 1.
///
/// Lag-k autocovariance uses the biased 1/n estimator, which keeps every
/// value inside [-1, 1].
pub fn autocorrelation(ts: &TimeSeries, max_lag: usize) -> Result<Vec<f64>> {
    let x = ts.samples();
    let n = x.len();
    if max_lag >= n {
        return Err(Error::TooShort {
            needed: max_lag + 1,
            got: n,
        });
    }
    let m = mean(x);
    let var: f64 = x.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / n as f64;
    if var <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((0..=max_lag)
        .map(|k| {
            let cov: f64 = x[..n - k]
                .iter()
                .zip(&x[k..])
                .map(|(a, b)| (a - m) * (b - m))
                .sum::<f64>()
                / n as f64;
            if k == 0 {
                1.0
            } else {
                (cov / var).clamp(-1.0, 1.0)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec(), 100.0).unwrap()
    }

    #[test]
    fn rejects_bad_rate_and_empty() {
        assert!(TimeSeries::new(vec![1.0], 0.0).is_err());
        assert!(TimeSeries::new(vec![1.0], -3.0).is_err());
        assert!(TimeSeries::new(vec![], 1.0).is_err());
        let t = TimeSeries::with_start(vec![0.0; 5], 4.0, 2.0).unwrap();
        assert_eq!(t.time_of(2), 2.5);
    }

    #[test]
    fn csv_writer_round_trips() {
        let ts = TimeSeries::new(vec![0.1, -2.5e-300, 1.0 / 3.0], 4.0).unwrap();
        let text = ts.to_csv("value");
        assert!(text.starts_with("value\n0.1\n"));
        assert_eq!(
            parse_csv(&text, &Column::Name("value".into()), 4.0).unwrap(),
            ts
        );
    }

    #[test]
    fn csv_plain_column() {
        let t = parse_csv("1.0\n2.0\n3.0\n", &Column::Index(0), 100.0).unwrap();
        assert_eq!(t.samples(), &[1.0, 2.0, 3.0]);
        assert_eq!(t.sample_rate_hz(), 100.0);
    }

    #[test]
    fn csv_header_by_name() {
        let t = parse_csv("t,bp\n0,80\n1,81.5\n", &"bp".parse().unwrap(), 100.0).unwrap();
        assert_eq!(t.samples(), &[80.0, 81.5]);
        let t = parse_csv("bp\n80\n81\n", &Column::Index(0), 100.0).unwrap();
        assert_eq!(t.samples(), &[80.0, 81.0]);
    }

    #[test]
    fn csv_bad_cell_names_row() {
        let text = "1\n2\n3\n4\n5\n6\nabc\n8\n";
        let err = parse_csv(text, &Column::Index(0), 100.0).unwrap_err();
        match err {
            Error::Parse { row, .. } => assert_eq!(row, 7),
            e => panic!("unexpected {e}"),
        }
        assert!(err_to_string(parse_csv("1\n", &Column::Index(0), 0.0)).contains("sample rate"));
        assert!(parse_csv("a,b\n1,2\n", &"c".parse().unwrap(), 1.0).is_err());
    }

    fn err_to_string<T>(r: Result<T>) -> String {
        match r {
            Ok(_) => String::new(),
            Err(e) => e.to_string(),
        }
    }

    #[test]
    fn detrend_examples() {
        let c = detrend_moving_average(&ts(&[5.0; 4]), 2).unwrap();
        assert_eq!(c.samples(), &[0.0; 4]);
        let c = detrend_moving_average(&ts(&[1.0, 2.0, 3.0, 4.0]), 1).unwrap();
        assert_eq!(c.samples(), &[0.0; 4]);
        let r = detrend_moving_average(&ts(&[0.0, 1.0, 2.0, 3.0]), 2).unwrap();
        assert_eq!(r.samples(), &[0.0, 0.5, 0.5, 0.5]);
        assert!(detrend_moving_average(&ts(&[1.0, 2.0]), 3).is_err());
        assert!(detrend_moving_average(&ts(&[1.0, 2.0]), 0).is_err());
    }

    #[test]
    fn detrend_long_series_matches_direct_means() {
        let x: Vec<f64> = (0..10_000)
            .map(|k| ((k as f64) * 0.37).sin() * 50.0 + 80.0)
            .collect();
        let out = detrend_moving_average(&ts(&x), 300).unwrap();
        for k in [0usize, 1, 299, 300, 5000, 9999] {
            let lo = (k + 1).saturating_sub(300);
            let m: f64 = x[lo..=k].iter().sum::<f64>() / (k + 1 - lo) as f64;
            assert_abs_diff_eq!(out.samples()[k], x[k] - m, epsilon = 1e-9);
        }
    }

    #[test]
    fn smoothness_examples() {
        let r = smoothness(&ts(&[1.0, 2.0, 3.0, 4.0, 5.0])).unwrap();
        assert_eq!((r.s1, r.v1, r.s2, r.v2), (4.0, 0.0, 0.0, 0.0));
        let r = smoothness(&ts(&[7.0; 3])).unwrap();
        assert_eq!((r.s1, r.v1, r.s2, r.v2), (0.0, 0.0, 0.0, 0.0));
        assert!(smoothness(&ts(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn smoothness_of_sine_period_matches_brute_force() {
        let x: Vec<f64> = (0..100)
            .map(|k| (2.0 * std::f64::consts::PI * k as f64 / 100.0).sin())
            .collect();
        let r = smoothness(&ts(&x)).unwrap();
        // Independent recomputation with explicit indexing.
        let (mut s1, mut s2) = (0.0, 0.0);
        let mut d1 = vec![];
        let mut d2 = vec![];
        for k in 1..x.len() {
            d1.push(x[k] - x[k - 1]);
            s1 += x[k] - x[k - 1];
        }
        for k in 2..x.len() {
            let v = x[k] - 2.0 * x[k - 1] + x[k - 2];
            d2.push(v);
            s2 += v;
        }
        let var = |d: &[f64]| {
            let m = d.iter().sum::<f64>() / d.len() as f64;
            d.iter().map(|v| (v - m).powi(2)).sum::<f64>() / d.len() as f64
        };
        assert_abs_diff_eq!(r.s1, s1, epsilon = 1e-12);
        assert_abs_diff_eq!(r.s2, s2, epsilon = 1e-12);
        assert_abs_diff_eq!(r.v1, var(&d1), epsilon = 1e-12);
        assert_abs_diff_eq!(r.v2, var(&d2), epsilon = 1e-12);
    }

    #[test]
    fn pearson_examples() {
        assert_abs_diff_eq!(
            pearson_correlation(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            pearson_correlation(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(),
            -1.0,
            epsilon = 1e-15
        );
        assert!(matches!(
            pearson_correlation(&[1.0, 1.0], &[1.0, 2.0]),
            Err(Error::ZeroVariance)
        ));
        assert!(pearson_correlation(&[1.0], &[1.0]).is_err());
        assert!(pearson_correlation(&[1.0, 2.0], &[1.0]).is_err());
    }

    #[test]
    fn pearson_against_textbook_formula() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let a: Vec<f64> = (0..100).map(|_| rng.random::<f64>()).collect();
        let b: Vec<f64> = a.iter().map(|x| x * 0.3 + rng.random::<f64>()).collect();
        // Computational formula: (nΣxy − ΣxΣy) / sqrt((nΣx² − (Σx)²)(nΣy² − (Σy)²))
        let n = 100.0;
        let sx: f64 = a.iter().sum();
        let sy: f64 = b.iter().sum();
        let sxy: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let sxx: f64 = a.iter().map(|x| x * x).sum();
        let syy: f64 = b.iter().map(|y| y * y).sum();
        let expected = (n * sxy - sx * sy) / ((n * sxx - sx * sx) * (n * syy - sy * sy)).sqrt();
        assert_abs_diff_eq!(
            pearson_correlation(&a, &b).unwrap(),
            expected,
            epsilon = 1e-12
        );
    }

    #[test]
    fn shock_index_examples() {
        let s = shock_index(&[100.0], &[120.0]).unwrap();
        assert_abs_diff_eq!(s[0], 100.0 / 120.0);
        assert_eq!(shock_index(&[60.0], &[60.0]).unwrap(), vec![1.0]);
        let hr: Vec<f64> = (0..=10).map(|k| 60.0 + 6.0 * k as f64).collect();
        let sbp: Vec<f64> = (0..=10).map(|k| 120.0 - 4.0 * k as f64).collect();
        let si = shock_index(&hr, &sbp).unwrap();
        assert!(si.windows(2).all(|w| w[1] > w[0]));
        assert!(shock_index(&[60.0], &[0.0]).is_err());
        assert!(shock_index(&[60.0, 1.0], &[1.0]).is_err());
    }

    #[test]
    fn autocorrelation_examples() {
        let alt: Vec<f64> = (0..100)
            .map(|k| if k % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let acf = autocorrelation(&ts(&alt), 3).unwrap();
        assert_eq!(acf[0], 1.0);
        assert_abs_diff_eq!(acf[1], -1.0, epsilon = 0.02);
        assert!(autocorrelation(&ts(&[2.0; 10]), 2).is_err());
        assert!(autocorrelation(&ts(&[1.0, 2.0]), 2).is_err());
    }

    #[test]
    fn autocorrelation_against_double_loop() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut x = vec![0.0f64; 300];
        for k in 1..x.len() {
            x[k] = 0.7 * x[k - 1] + rng.random::<f64>() - 0.5;
        }
        let acf = autocorrelation(&ts(&x), 10).unwrap();
        let n = x.len();
        let m = x.iter().sum::<f64>() / n as f64;
        let mut c0 = 0.0;
        for i in 0..n {
            c0 += (x[i] - m) * (x[i] - m);
        }
        for lag in 0..=10 {
            let mut c = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if j == i + lag {
                        c += (x[i] - m) * (x[j] - m);
                    }
                }
            }
            assert_abs_diff_eq!(acf[lag], c / c0, epsilon = 1e-12);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn detrend_constant_is_zero(c in -1e6f64..1e6, n in 1usize..200, w in 1usize..200) {
                let w = w.min(n);
                let out = detrend_moving_average(&ts(&vec![c; n]), w).unwrap();
                prop_assert!(out.samples().iter().all(|&v| v == 0.0));
            }

            #[test]
            fn affine_series_smoothness(a in -100f64..100.0, b in -100f64..100.0, n in 3usize..100) {
                let x: Vec<f64> = (0..n).map(|k| a * k as f64 + b).collect();
                let r = smoothness(&ts(&x)).unwrap();
                prop_assert!(r.v1 <= 1e-9 * (1.0 + a * a));
                prop_assert!(r.s2.abs() <= 1e-9 * (1.0 + a.abs() + b.abs()));
            }

            #[test]
            fn pearson_self_symmetry_affine(
                a in proptest::collection::vec(-100f64..100.0, 3..50),
                seed in any::<u64>(),
                scale in 0.01f64..100.0,
                shift in -100f64..100.0,
            ) {
                use rand::{Rng, SeedableRng};
                prop_assume!(population_variance(&a) > 1e-6);
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let b: Vec<f64> = a.iter().map(|_| rng.random::<f64>()).collect();
                prop_assert!((pearson_correlation(&a, &a).unwrap() - 1.0).abs() < 1e-12);
                let ab = pearson_correlation(&a, &b).unwrap();
                let ba = pearson_correlation(&b, &a).unwrap();
                prop_assert!((ab - ba).abs() < 1e-12);
                let a2: Vec<f64> = a.iter().map(|x| scale * x + shift).collect();
                prop_assert!((pearson_correlation(&a2, &b).unwrap() - ab).abs() < 1e-9);
            }

            #[test]
            fn acf_bounded(x in proptest::collection::vec(-10f64..10.0, 5..80)) {
                prop_assume!(population_variance(&x) > 1e-9);
                let acf = autocorrelation(&ts(&x), x.len() - 1).unwrap();
                prop_assert_eq!(acf[0], 1.0);
                prop_assert!(acf.iter().all(|v| (-1.0..=1.0).contains(v)));
            }
        }
    }
}
