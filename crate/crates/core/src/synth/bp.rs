//! Synthetic arterial pressure from a three-variable limit-cycle model.
//!
//! The state `(x, y)` circles an attracting unit circle once per beat, with
//! angular velocity set from a beat-to-beat RR interval series; `z` is driven
//! by five Gaussian bumps placed at fixed phase angles (P, Q, R, S, T) and
//! relaxes towards `z0`. The `z` trace is then mapped onto a pressure range.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::detect::percentile;
use crate::error::{Error, Result};
use crate::timeseries::TimeSeries;

/// Sinusoids per spectral band of the heart-rate process.
const BAND_COMPONENTS: usize = 16;
const LF_HZ: f64 = 0.1;
const HF_HZ: f64 = 0.25;
const BAND_STD_HZ: f64 = 0.01;
/// Grid on which the heart-rate process is standardized.
const HR_GRID_HZ: f64 = 4.0;
/// Minimum settling time integrated before the first recorded sample.
const WARMUP_S: f64 = 8.0;

#[derive(Debug, Clone, PartialEq)]
pub struct BpModelParams {
    pub sfecg_hz: f64,
    pub hrmean_bpm: f64,
    pub hrstd_bpm: f64,
    pub lfhfratio: f64,
    /// Extrema angles of P, Q, R, S, T in degrees.
    pub theta_deg: [f64; 5],
    pub a: [f64; 5],
    pub b: [f64; 5],
    pub z0: f64,
    pub bp_offset_mmhg: f64,
    pub bp_range_mmhg: f64,
    pub duration_s: f64,
    pub seed: u64,
}

impl Default for BpModelParams {
    fn default() -> Self {
        Self {
            sfecg_hz: 256.0,
            hrmean_bpm: 60.0,
            hrstd_bpm: 1.0,
            lfhfratio: 0.5,
            theta_deg: [-70.0, -15.0, 0.0, 15.0, 100.0],
            a: [1.2, -5.0, 30.0, -7.5, 0.75],
            b: [0.25, 0.1, 0.1, 0.1, 0.4],
            z0: 0.0,
            bp_offset_mmhg: 80.0,
            bp_range_mmhg: 40.0,
            duration_s: 60.0,
            seed: 0,
        }
    }
}

impl BpModelParams {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("sfecg", self.sfecg_hz),
            ("hrmean", self.hrmean_bpm),
            ("bp_range", self.bp_range_mmhg),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.b.iter().any(|&b| !(b > 0.0)) {
            return Err(Error::InvalidParameter("every b_i must be positive".into()));
        }
        if !(self.hrstd_bpm >= 0.0) || !(self.lfhfratio >= 0.0) {
            return Err(Error::InvalidParameter(
                "hrstd and lfhfratio must be non-negative".into(),
            ));
        }
        if !(self.duration_s >= 5.0) {
            return Err(Error::InvalidParameter(format!(
                "duration must be at least 5 s, got {}",
                self.duration_s
            )));
        }
        let fields = self
            .theta_deg
            .iter()
            .chain(&self.a)
            .chain([&self.z0, &self.bp_offset_mmhg]);
        if fields.into_iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite model parameter".into()));
        }
        Ok(())
    }

    /// `key=value` lines describing every parameter.
    pub fn to_key_values(&self) -> Vec<(String, String)> {
        let list = |v: &[f64; 5]| v.iter().map(f64::to_string).collect::<Vec<_>>().join(";");
        vec![
            ("sfecg_hz".into(), self.sfecg_hz.to_string()),
            ("hrmean_bpm".into(), self.hrmean_bpm.to_string()),
            ("hrstd_bpm".into(), self.hrstd_bpm.to_string()),
            ("lfhfratio".into(), self.lfhfratio.to_string()),
            ("theta_deg".into(), list(&self.theta_deg)),
            ("a".into(), list(&self.a)),
            ("b".into(), list(&self.b)),
            ("z0".into(), self.z0.to_string()),
            ("bp_offset_mmhg".into(), self.bp_offset_mmhg.to_string()),
            ("bp_range_mmhg".into(), self.bp_range_mmhg.to_string()),
            ("duration_s".into(), self.duration_s.to_string()),
            ("seed".into(), self.seed.to_string()),
        ]
    }
}

/// Linear change of mean heart rate and pulse pressure starting at
/// `onset_s` and completing `ramp_s` later; values hold afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeRamp {
    pub onset_s: f64,
    pub ramp_s: f64,
    pub hrmean_end_bpm: f64,
    pub bp_range_end_mmhg: f64,
}

impl RegimeRamp {
    fn fraction(&self, t: f64) -> f64 {
        if t <= self.onset_s {
            0.0
        } else if self.ramp_s <= 0.0 || t >= self.onset_s + self.ramp_s {
            1.0
        } else {
            (t - self.onset_s) / self.ramp_s
        }
    }
}

/// Output of one generator run.
#[derive(Debug, Clone)]
pub struct BpRun {
    pub pressure: TimeSeries,
    /// Raw `z` trace, one value per output sample.
    pub z: Vec<f64>,
    /// Radius `sqrt(x^2 + y^2)` per output sample.
    pub radius: Vec<f64>,
    /// Beat onset times in seconds.
    pub beat_times_s: Vec<f64>,
}

/// Generates a pressure waveform with fixed parameters.
pub fn generate_bp(p: &BpModelParams) -> Result<TimeSeries> {
    Ok(generate_bp_run(p, None)?.pressure)
}

/// Generates a pressure waveform, optionally with a regime ramp.
pub fn generate_bp_run(p: &BpModelParams, ramp: Option<&RegimeRamp>) -> Result<BpRun> {
    p.validate()?;
    if let Some(r) = ramp {
        if !(r.hrmean_end_bpm > 0.0 && r.bp_range_end_mmhg > 0.0) {
            return Err(Error::InvalidParameter(
                "ramp targets must be positive".into(),
            ));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let hr_noise = HeartRateProcess::new(p, &mut rng)?;
    let hrmean_at = |t: f64| match ramp {
        Some(r) => p.hrmean_bpm + r.fraction(t) * (r.hrmean_end_bpm - p.hrmean_bpm),
        None => p.hrmean_bpm,
    };
    let range_at = |t: f64| match ramp {
        Some(r) => p.bp_range_mmhg + r.fraction(t) * (r.bp_range_end_mmhg - p.bp_range_mmhg),
        None => p.bp_range_mmhg,
    };

    // Beat schedule: each beat lasts the RR interval drawn at its onset.
    let mut beat_times_s = vec![0.0];
    let mut omegas = Vec::new();
    loop {
        let t = *beat_times_s.last().expect("non-empty");
        let hr = (hrmean_at(t) + p.hrstd_bpm * hr_noise.standardized(t)).max(1.0);
        let rr = 60.0 / hr;
        omegas.push(2.0 * PI / rr);
        if t > p.duration_s {
            break;
        }
        beat_times_s.push(t + rr);
    }

    let theta: [f64; 5] = p.theta_deg.map(f64::to_radians);
    let dt = 1.0 / p.sfecg_hz;
    let n = (p.duration_s * p.sfecg_hz).round() as usize;

    let omega_at = |t: f64, beat: &mut usize| {
        while *beat + 1 < beat_times_s.len() && t >= beat_times_s[*beat + 1] {
            *beat += 1;
        }
        omegas[*beat]
    };
    let deriv = |s: [f64; 3], omega: f64| -> [f64; 3] {
        let [x, y, z] = s;
        let alpha = 1.0 - (x * x + y * y).sqrt();
        let phase = y.atan2(x);
        let mut dz = -(z - p.z0);
        for i in 0..5 {
            let d = wrap_angle(phase - theta[i]);
            dz -= p.a[i] * d * (-(d * d) / (2.0 * p.b[i] * p.b[i])).exp();
        }
        [alpha * x - omega * y, alpha * y + omega * x, dz]
    };

    let rk4 = |state: &mut [f64; 3], w1: f64, wh: f64, w2: f64| {
        let k1 = deriv(*state, w1);
        let k2 = deriv(axpy(*state, 0.5 * dt, k1), wh);
        let k3 = deriv(axpy(*state, 0.5 * dt, k2), wh);
        let k4 = deriv(axpy(*state, dt, k3), w2);
        for i in 0..3 {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    };

    // Unrecorded warm-up over whole cycles at the first beat's rate, so `z`
    // has relaxed onto its periodic orbit and the phase is back near zero.
    let mut state = [1.0, 0.0, p.z0];
    let cycles = (WARMUP_S * omegas[0] / (2.0 * PI)).ceil();
    let warmup_steps = (cycles * 2.0 * PI / omegas[0] / dt).round() as usize;
    for _ in 0..warmup_steps {
        rk4(&mut state, omegas[0], omegas[0], omegas[0]);
    }
    let mut z = Vec::with_capacity(n);
    let mut radius = Vec::with_capacity(n);
    let mut beat = 0usize;
    for k in 0..n {
        let t = k as f64 * dt;
        z.push(state[2]);
        radius.push(state[0].hypot(state[1]));
        // Fixed-step classical Runge-Kutta.
        let w1 = omega_at(t, &mut beat);
        let mut probe = beat;
        let wh = omega_at(t + 0.5 * dt, &mut probe);
        let w2 = omega_at(t + dt, &mut probe);
        rk4(&mut state, w1, wh, w2);
        if state.iter().any(|v| !v.is_finite()) {
            return Err(Error::Blowup { time_s: t + dt });
        }
    }

    let z_lo = percentile(&z, 1.0)?;
    let z_hi = percentile(&z, 99.0)?;
    if !(z_hi > z_lo) {
        return Err(Error::DegenerateRange { value: z_lo });
    }
    let pressure: Vec<f64> = z
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let u = ((v - z_lo) / (z_hi - z_lo)).clamp(0.0, 1.0);
            p.bp_offset_mmhg + range_at(k as f64 * dt) * u
        })
        .collect();
    beat_times_s.retain(|&t| t < p.duration_s);
    Ok(BpRun {
        pressure: TimeSeries::new(pressure, p.sfecg_hz)?,
        z,
        radius,
        beat_times_s,
    })
}

fn axpy(s: [f64; 3], h: f64, d: [f64; 3]) -> [f64; 3] {
    [s[0] + h * d[0], s[1] + h * d[1], s[2] + h * d[2]]
}

/// Maps an angle into `(-pi, pi]`.
fn wrap_angle(a: f64) -> f64 {
    let r = (a + PI).rem_euclid(2.0 * PI) - PI;
    if r == -PI {
        PI
    } else {
        r
    }
}

/// Zero-mean, unit-variance heart-rate fluctuation: two banks of random-phase
/// sinusoids around the low- and high-frequency bands, mixed so the LF/HF
/// power ratio equals `lfhfratio`, then standardized on a fixed grid over
/// the run.
struct HeartRateProcess {
    components: Vec<(f64, f64, f64)>,
    offset: f64,
    scale: f64,
}

impl HeartRateProcess {
    fn new(p: &BpModelParams, rng: &mut ChaCha8Rng) -> Result<Self> {
        let lf_w = (p.lfhfratio / (1.0 + p.lfhfratio)).sqrt();
        let hf_w = (1.0 / (1.0 + p.lfhfratio)).sqrt();
        let amp = (2.0 / BAND_COMPONENTS as f64).sqrt();
        let mut components = Vec::with_capacity(2 * BAND_COMPONENTS);
        for (center, weight) in [(LF_HZ, lf_w), (HF_HZ, hf_w)] {
            let spread = Normal::new(center, BAND_STD_HZ)
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            for _ in 0..BAND_COMPONENTS {
                let f = spread.sample(rng).abs();
                let phase = rng.random::<f64>() * 2.0 * PI;
                components.push((weight * amp, 2.0 * PI * f, phase));
            }
        }
        let mut proc = Self {
            components,
            offset: 0.0,
            scale: 1.0,
        };
        let grid: Vec<f64> = (0..=(p.duration_s * HR_GRID_HZ).ceil() as usize)
            .map(|k| proc.raw(k as f64 / HR_GRID_HZ))
            .collect();
        let mean = grid.iter().sum::<f64>() / grid.len() as f64;
        let var = grid.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / grid.len() as f64;
        proc.offset = mean;
        proc.scale = if var > 0.0 { 1.0 / var.sqrt() } else { 0.0 };
        Ok(proc)
    }

    fn raw(&self, t: f64) -> f64 {
        self.components
            .iter()
            .map(|&(a, w, ph)| a * (w * t + ph).sin())
            .sum()
    }

    fn standardized(&self, t: f64) -> f64 {
        (self.raw(t) - self.offset) * self.scale
    }
}

/// Rising crossings of `offset + 0.75 * range` with a 250 ms refractory
/// period; a simple beat detector for the generated waveform.
pub fn detect_beats(pressure: &TimeSeries, offset: f64, range: f64) -> Vec<f64> {
    let level = offset + 0.75 * range;
    let refractory = (0.25 * pressure.sample_rate_hz()).ceil() as usize;
    let x = pressure.samples();
    let mut beats = Vec::new();
    let mut last: Option<usize> = None;
    for k in 1..x.len() {
        if x[k - 1] < level && x[k] >= level && last.is_none_or(|l| k - l >= refractory) {
            beats.push(pressure.time_of(k));
            last = Some(k);
        }
    }
    beats
}
