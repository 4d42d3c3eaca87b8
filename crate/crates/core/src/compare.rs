//! Runs the SLEM detector and the phase-space detector over one set of
//! synthetic scenarios and tabulates detection times side by side.

use std::fmt::Write as _;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::detect::{detect_signal, DetectionResult, DetectorConfig, PipelineConfig};
use crate::error::{Error, Result};
use crate::rps::{rps_detect, RpsConfig};
use crate::synth::{generate_bp_run, BpModelParams, RegimeRamp};

/// Paired stationary and regime-change runs, one pair per seed.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSet {
    /// Model parameters shared by every run; the seed is overridden.
    pub base: BpModelParams,
    pub ramp: RegimeRamp,
    pub seeds: Vec<u64>,
}

impl Default for ScenarioSet {
    fn default() -> Self {
        Self {
            base: BpModelParams {
                sfecg_hz: 100.0,
                duration_s: 480.0,
                ..Default::default()
            },
            ramp: RegimeRamp {
                onset_s: 360.0,
                ramp_s: 120.0,
                hrmean_end_bpm: 100.0,
                bp_range_end_mmhg: 25.0,
            },
            seeds: (0..20).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    Stationary,
    RegimeChange,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub detector: String,
    pub scenario: String,
    pub kind: ScenarioKind,
    pub detected: bool,
    /// Alarm time minus onset for regime-change runs (negative when the
    /// alarm precedes the onset); alarm time itself for stationary runs.
    pub time_to_detect_s: Option<f64>,
}

/// Hit and false-alarm counts of one detector.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectorSummary {
    pub detector: String,
    pub runs: usize,
    pub false_alarms: usize,
    /// Regime-change runs alarmed after the onset.
    pub hits: usize,
}

impl DetectorSummary {
    pub fn false_alarm_rate(&self) -> f64 {
        self.false_alarms as f64 / self.runs as f64
    }

    pub fn hit_rate(&self) -> f64 {
        self.hits as f64 / self.runs as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    pub fn csv_header() -> &'static str {
        "detector,scenario,detected,time_to_detect_s"
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("{}\n", Self::csv_header());
        for r in &self.rows {
            let t = r
                .time_to_detect_s
                .map(|t| t.to_string())
                .unwrap_or_default();
            let _ = writeln!(s, "{},{},{},{}", r.detector, r.scenario, r.detected, t);
        }
        s
    }

    /// Per-detector counts, in order of first appearance.
    pub fn summaries(&self) -> Vec<DetectorSummary> {
        let mut out: Vec<DetectorSummary> = Vec::new();
        for r in &self.rows {
            let idx = match out.iter().position(|s| s.detector == r.detector) {
                Some(i) => i,
                None => {
                    out.push(DetectorSummary {
                        detector: r.detector.clone(),
                        runs: 0,
                        false_alarms: 0,
                        hits: 0,
                    });
                    out.len() - 1
                }
            };
            let s = &mut out[idx];
            match r.kind {
                ScenarioKind::Stationary => {
                    s.runs += 1;
                    s.false_alarms += usize::from(r.detected);
                }
                ScenarioKind::RegimeChange => {
                    s.hits +=
                        usize::from(r.detected && r.time_to_detect_s.is_some_and(|t| t > 0.0));
                }
            }
        }
        out
    }
}

/// Settings of both detectors.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DetectorSuite {
    pub pipeline: PipelineConfig,
    pub detector: DetectorConfig,
    /// The phase-space detector's seed is replaced by the run seed.
    pub rps: RpsConfig,
}

fn run_pair(set: &ScenarioSet, suite: &DetectorSuite, seed: u64) -> Result<Vec<ComparisonRow>> {
    let p = BpModelParams {
        seed,
        ..set.base.clone()
    };
    let rps_cfg = RpsConfig { seed, ..suite.rps };
    let mut rows = Vec::with_capacity(4);
    for kind in [ScenarioKind::Stationary, ScenarioKind::RegimeChange] {
        let (ramp, name, onset) = match kind {
            ScenarioKind::Stationary => (None, format!("stationary-{seed}"), 0.0),
            ScenarioKind::RegimeChange => {
                (Some(&set.ramp), format!("change-{seed}"), set.ramp.onset_s)
            }
        };
        let ts = generate_bp_run(&p, ramp)?.pressure;
        let results: [(String, DetectionResult); 2] = [
            (
                format!("slem-{}", suite.detector.mode),
                detect_signal(&ts, &suite.pipeline, &suite.detector)?,
            ),
            ("rps".to_string(), rps_detect(&ts, &rps_cfg)?),
        ];
        for (detector, r) in results {
            rows.push(ComparisonRow {
                detector,
                scenario: name.clone(),
                kind,
                detected: r.detected,
                time_to_detect_s: r.first_alarm_time_s.map(|t| t - onset),
            });
        }
    }
    Ok(rows)
}

/// Runs both detectors on every scenario. Rows are ordered by seed, then
/// scenario, then detector, whatever the schedule.
pub fn compare_detectors(set: &ScenarioSet, suite: &DetectorSuite) -> Result<Comparison> {
    if set.seeds.is_empty() {
        return Err(Error::InvalidParameter(
            "the scenario set has no seeds".into(),
        ));
    }
    let run = |&seed: &u64| run_pair(set, suite, seed);
    #[cfg(feature = "parallel")]
    let per_seed: Result<Vec<Vec<ComparisonRow>>> = set.seeds.par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let per_seed: Result<Vec<Vec<ComparisonRow>>> = set.seeds.iter().map(run).collect();
    Ok(Comparison {
        rows: per_seed?.into_iter().flatten().collect(),
    })
}
