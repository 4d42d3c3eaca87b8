//! Browser bindings for the demo page in `www/`. Three operations: the
//! spectrum of a logistic-map chain, the windowed SLEM of a synthetic
//! pressure signal, and both detectors on one regime-change run.
//!
//! The `*_impl` functions hold the logic and are tested natively; the
//! exported wrappers only convert errors for JavaScript.

use mixrate::compare::DetectorSuite;
use mixrate::detect::{
    detect_signal, slem_series, DetectionResult, DetectorConfig, DetectorMode, PipelineConfig,
};
use mixrate::markov::build_transition_matrix;
use mixrate::rps::rps_detect;
use mixrate::spectral::eigen_decompose;
use mixrate::synth::{
    generate_bp, generate_bp_run, logistic_series, BpModelParams, LogisticParams, NoiseMode,
    RegimeRamp,
};
use mixrate::{Error, TimeSeries};
use wasm_bindgen::prelude::*;

/// Keeps at most `max_points` evenly spaced samples for plotting.
fn thin(ts: &TimeSeries, max_points: usize) -> (Vec<f64>, Vec<f64>) {
    let step = ts.len().div_ceil(max_points.max(1)).max(1);
    (0..ts.len())
        .step_by(step)
        .map(|k| (ts.time_of(k), ts.samples()[k]))
        .unzip()
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpectrum {
    series: Vec<f64>,
    matrix: Vec<f64>,
    eig_re: Vec<f64>,
    eig_im: Vec<f64>,
    states: usize,
}

#[wasm_bindgen]
impl ChainSpectrum {
    #[wasm_bindgen(getter)]
    pub fn series(&self) -> Vec<f64> {
        self.series.clone()
    }

    /// Transition probabilities, row-major.
    #[wasm_bindgen(getter)]
    pub fn matrix(&self) -> Vec<f64> {
        self.matrix.clone()
    }

    /// Real parts, sorted by descending modulus.
    #[wasm_bindgen(getter)]
    pub fn eig_re(&self) -> Vec<f64> {
        self.eig_re.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn eig_im(&self) -> Vec<f64> {
        self.eig_im.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn states(&self) -> usize {
        self.states
    }

    #[wasm_bindgen(getter)]
    pub fn slem(&self) -> f64 {
        self.eig_re[1].hypot(self.eig_im[1])
    }
}

pub fn logistic_spectrum_impl(
    mu: f64,
    noise: &str,
    noise_std: f64,
    n: usize,
    states: usize,
    seed: u64,
) -> Result<ChainSpectrum, Error> {
    let ts = logistic_series(&LogisticParams {
        mu,
        x0: 0.3,
        n,
        noise_mode: noise.parse::<NoiseMode>()?,
        noise_std,
        seed,
    })?;
    let tm = build_transition_matrix(&ts, states)?;
    let spectrum = eigen_decompose(tm.probs())?;
    Ok(ChainSpectrum {
        series: ts.samples().to_vec(),
        matrix: tm.probs().as_slice().to_vec(),
        eig_re: spectrum.eigenvalues.iter().map(|z| z.re).collect(),
        eig_im: spectrum.eigenvalues.iter().map(|z| z.im).collect(),
        states,
    })
}

/// Chain and spectrum of a logistic-map run. `noise` is `none`,
/// `measurement` or `dynamic`.
#[wasm_bindgen]
pub fn logistic_spectrum(
    mu: f64,
    noise: &str,
    noise_std: f64,
    n: usize,
    states: usize,
    seed: u64,
) -> Result<ChainSpectrum, JsError> {
    logistic_spectrum_impl(mu, noise, noise_std, n, states, seed)
        .map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct SignalSlem {
    signal_t: Vec<f64>,
    signal: Vec<f64>,
    slem_t: Vec<f64>,
    slem: Vec<f64>,
}

#[wasm_bindgen]
impl SignalSlem {
    #[wasm_bindgen(getter)]
    pub fn signal_t(&self) -> Vec<f64> {
        self.signal_t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn signal(&self) -> Vec<f64> {
        self.signal.clone()
    }

    /// Window end times, seconds.
    #[wasm_bindgen(getter)]
    pub fn slem_t(&self) -> Vec<f64> {
        self.slem_t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn slem(&self) -> Vec<f64> {
        self.slem.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn mean_slem(&self) -> f64 {
        self.slem.iter().sum::<f64>() / self.slem.len() as f64
    }
}

pub fn bp_slem_impl(
    hrmean: f64,
    hrstd: f64,
    duration_s: f64,
    states: usize,
    seed: u64,
) -> Result<SignalSlem, Error> {
    let ts = generate_bp(&BpModelParams {
        sfecg_hz: 100.0,
        hrmean_bpm: hrmean,
        hrstd_bpm: hrstd,
        duration_s,
        seed,
        ..Default::default()
    })?;
    let cfg = PipelineConfig {
        num_states: states,
        ..Default::default()
    };
    let series = slem_series(&ts, &cfg)?;
    let (slem_t, slem) = series
        .points
        .iter()
        .filter_map(|p| p.slem.map(|v| (p.t_end_s, v)))
        .unzip();
    // Show the first 20 s in detail.
    let head = ts.slice(0, ts.len().min(2000))?;
    let (signal_t, signal) = thin(&head, 2000);
    Ok(SignalSlem {
        signal_t,
        signal,
        slem_t,
        slem,
    })
}

/// Synthetic pressure at 100 Hz and its SLEM over 20 s windows.
#[wasm_bindgen]
pub fn bp_slem(
    hrmean: f64,
    hrstd: f64,
    duration_s: f64,
    states: usize,
    seed: u64,
) -> Result<SignalSlem, JsError> {
    bp_slem_impl(hrmean, hrstd, duration_s, states, seed).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorRun {
    onset_s: f64,
    signal_t: Vec<f64>,
    signal: Vec<f64>,
    slem: DetectionResult,
    rps: DetectionResult,
}

fn trace(r: &DetectionResult) -> (Vec<f64>, Vec<f64>) {
    r.series
        .iter()
        .filter_map(|p| p.value.map(|v| (p.t_s, v)))
        .unzip()
}

#[wasm_bindgen]
impl DetectorRun {
    #[wasm_bindgen(getter)]
    pub fn onset_s(&self) -> f64 {
        self.onset_s
    }

    #[wasm_bindgen(getter)]
    pub fn signal_t(&self) -> Vec<f64> {
        self.signal_t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn signal(&self) -> Vec<f64> {
        self.signal.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn slem_t(&self) -> Vec<f64> {
        trace(&self.slem).0
    }

    #[wasm_bindgen(getter)]
    pub fn slem(&self) -> Vec<f64> {
        trace(&self.slem).1
    }

    #[wasm_bindgen(getter)]
    pub fn slem_threshold(&self) -> f64 {
        self.slem.threshold
    }

    /// Alarm time of the SLEM detector, or NaN without an alarm.
    #[wasm_bindgen(getter)]
    pub fn slem_alarm_s(&self) -> f64 {
        self.slem.first_alarm_time_s.unwrap_or(f64::NAN)
    }

    #[wasm_bindgen(getter)]
    pub fn rps_t(&self) -> Vec<f64> {
        trace(&self.rps).0
    }

    #[wasm_bindgen(getter)]
    pub fn rps_score(&self) -> Vec<f64> {
        trace(&self.rps).1
    }

    #[wasm_bindgen(getter)]
    pub fn rps_threshold(&self) -> f64 {
        self.rps.threshold
    }

    #[wasm_bindgen(getter)]
    pub fn rps_alarm_s(&self) -> f64 {
        self.rps.first_alarm_time_s.unwrap_or(f64::NAN)
    }
}

pub fn detect_run_impl(change: bool, corrected: bool, seed: u64) -> Result<DetectorRun, Error> {
    let p = BpModelParams {
        sfecg_hz: 100.0,
        duration_s: 480.0,
        seed,
        ..Default::default()
    };
    let ramp = RegimeRamp {
        onset_s: 360.0,
        ramp_s: 120.0,
        hrmean_end_bpm: 100.0,
        bp_range_end_mmhg: 25.0,
    };
    let ts = generate_bp_run(&p, change.then_some(&ramp))?.pressure;
    let suite = DetectorSuite {
        detector: DetectorConfig {
            mode: if corrected {
                DetectorMode::Corrected
            } else {
                DetectorMode::Paper
            },
            ..Default::default()
        },
        ..Default::default()
    };
    let slem = detect_signal(&ts, &suite.pipeline, &suite.detector)?;
    let rps = rps_detect(&ts, &mixrate::rps::RpsConfig { seed, ..suite.rps })?;
    let (signal_t, signal) = thin(&ts, 4000);
    Ok(DetectorRun {
        onset_s: if change { ramp.onset_s } else { f64::NAN },
        signal_t,
        signal,
        slem,
        rps,
    })
}

/// Both detectors on an 8-minute pressure run. With `change`, mean heart
/// rate ramps 60 to 100 bpm and pulse pressure 40 to 25 mmHg from 360 s.
#[wasm_bindgen]
pub fn detect_run(change: bool, corrected: bool, seed: u64) -> Result<DetectorRun, JsError> {
    detect_run_impl(change, corrected, seed).map_err(|e| JsError::new(&e.to_string()))
}
