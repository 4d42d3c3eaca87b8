//! Flag definitions. Each group mirrors one library config type.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mixrate::detect::{DetectorConfig, DetectorMode, PipelineConfig, QuantizerScope};
use mixrate::rps::RpsConfig;
use mixrate::synth::{BpModelParams, BpParam, NoiseMode, RegimeRamp};
use mixrate::timeseries::Column;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "mixrate",
    version,
    about = "Change detection via the mixing rate of empirical Markov chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transition matrix and eigenvalue spectrum of a whole series.
    BuildChain(BuildChainArgs),
    /// Windowed SLEM series of a signal.
    SlemSeries(SlemSeriesArgs),
    /// Change detection on a signal or on a precomputed SLEM series.
    Detect(DetectArgs),
    /// Synthetic signals.
    #[command(subcommand)]
    Synth(SynthCommand),
    /// Mean SLEM of the pressure model while one parameter varies.
    Sweep(SweepArgs),
    /// Phase-space (delay embedding plus Gaussian mixture) change detection.
    RpsDetect(RpsDetectArgs),
    /// Both detectors on paired stationary and regime-change runs.
    Compare(CompareArgs),
    /// Per-window SLEM, smoothness and chain-structure measures.
    Measures(MeasuresArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV file with one value per row and an optional header row.
    #[arg(long)]
    pub input: PathBuf,
    /// Column to read: 0-based index or header name.
    #[arg(long, default_value = "0")]
    pub column: Column,
    /// Sample rate of the input, in Hz.
    #[arg(long)]
    pub rate: f64,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// Window length in samples.
    #[arg(long, default_value_t = 2000)]
    pub window: usize,
    /// Window step in samples.
    #[arg(long, default_value_t = 100)]
    pub stride: usize,
    /// Number of quantization states.
    #[arg(long, default_value_t = 10)]
    pub states: usize,
    /// Trailing moving-average length; 0 disables detrending.
    #[arg(long, default_value_t = 2000)]
    pub detrend: usize,
    /// `per-window` or `global` quantizer range.
    #[arg(long, default_value = "per-window")]
    pub scope: QuantizerScope,
}

impl PipelineArgs {
    pub fn config(&self) -> PipelineConfig {
        PipelineConfig {
            window_samples: self.window,
            stride_samples: self.stride,
            num_states: self.states,
            detrend_window: (self.detrend > 0).then_some(self.detrend),
            quantizer_scope: self.scope,
        }
    }
}

#[derive(Debug, Args)]
pub struct DetectorArgs {
    /// Baseline length in decimated SLEM values.
    #[arg(long, default_value_t = 75)]
    pub baseline: usize,
    /// Keep every n-th SLEM value.
    #[arg(long, default_value_t = 4)]
    pub downsample: usize,
    /// Corrected-mode threshold percentile of the baseline.
    #[arg(long, default_value_t = 5.0)]
    pub alpha: f64,
    /// Consecutive below-threshold values needed for an alarm.
    #[arg(long, default_value_t = 4)]
    pub next: usize,
    /// `paper` (95th percentile of the whole series) or `corrected`.
    #[arg(long, default_value = "paper")]
    pub mode: DetectorMode,
}

impl DetectorArgs {
    pub fn config(&self) -> DetectorConfig {
        DetectorConfig {
            baseline_window: self.baseline,
            downsample_rate: self.downsample,
            alpha: self.alpha,
            next_window: self.next,
            mode: self.mode,
        }
    }
}

#[derive(Debug, Args)]
pub struct RpsArgs {
    /// Leading span used as baseline, in seconds.
    #[arg(long, default_value_t = 300.0)]
    pub baseline_s: f64,
    /// Embedding dimension.
    #[arg(long, default_value_t = 3)]
    pub dim: usize,
    /// Embedding lag in samples.
    #[arg(long, default_value_t = 1)]
    pub tau: usize,
    /// Mixture components.
    #[arg(long, default_value_t = 4)]
    pub components: usize,
    /// Threshold percentile of the baseline window scores.
    #[arg(long, default_value_t = 1.0)]
    pub percentile: f64,
    /// Scoring window length in seconds.
    #[arg(long, default_value_t = 5.0)]
    pub window_s: f64,
    /// Scan windows below threshold in a row needed for an alarm.
    #[arg(long, default_value_t = 4)]
    pub consecutive: usize,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

impl RpsArgs {
    pub fn config(&self, seed: u64) -> RpsConfig {
        RpsConfig {
            baseline_span_s: self.baseline_s,
            d: self.dim,
            tau: self.tau,
            k: self.components,
            threshold_percentile: self.percentile,
            window_s: self.window_s,
            consecutive_windows: self.consecutive,
            seed,
            max_iter: self.max_iter,
            tol: self.tol,
        }
    }
}

#[derive(Debug, Args)]
pub struct BpArgs {
    /// Integration and output rate, Hz.
    #[arg(long, default_value_t = 256.0)]
    pub sfecg: f64,
    #[arg(long, default_value_t = 60.0)]
    pub hrmean: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hrstd: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lfhfratio: f64,
    /// Angle of the fourth extremum (S), degrees.
    #[arg(long, default_value_t = 15.0)]
    pub theta_s: f64,
    #[arg(long, default_value_t = 80.0)]
    pub bp_offset: f64,
    #[arg(long, default_value_t = 40.0)]
    pub bp_range: f64,
    /// Length of the generated signal, seconds.
    #[arg(long, default_value_t = 60.0)]
    pub duration: f64,
}

impl BpArgs {
    pub fn params(&self, seed: u64) -> BpModelParams {
        let mut p = BpModelParams {
            sfecg_hz: self.sfecg,
            hrmean_bpm: self.hrmean,
            hrstd_bpm: self.hrstd,
            lfhfratio: self.lfhfratio,
            bp_offset_mmhg: self.bp_offset,
            bp_range_mmhg: self.bp_range,
            duration_s: self.duration,
            seed,
            ..Default::default()
        };
        p.theta_deg[3] = self.theta_s;
        p
    }
}

#[derive(Debug, Args)]
pub struct RampArgs {
    /// Start of a linear regime change, seconds.
    #[arg(long)]
    pub ramp_onset: Option<f64>,
    /// Length of the ramp, seconds.
    #[arg(long)]
    pub ramp_duration: Option<f64>,
    /// Mean heart rate reached at the end of the ramp.
    #[arg(long)]
    pub hrmean_end: Option<f64>,
    /// Pulse pressure reached at the end of the ramp.
    #[arg(long)]
    pub bp_range_end: Option<f64>,
}

impl RampArgs {
    pub fn ramp(&self) -> Result<Option<RegimeRamp>, CliError> {
        match (self.ramp_onset, self.ramp_duration, self.hrmean_end, self.bp_range_end) {
            (None, None, None, None) => Ok(None),
            (Some(onset_s), Some(ramp_s), Some(hrmean_end_bpm), Some(bp_range_end_mmhg)) => Ok(Some(RegimeRamp {
                onset_s,
                ramp_s,
                hrmean_end_bpm,
                bp_range_end_mmhg,
            })),
            _ => Err(CliError::Usage(
                "a ramp needs all of --ramp-onset, --ramp-duration, --hrmean-end and --bp-range-end".into(),
            )),
        }
    }
}

#[derive(Debug, Args)]
pub struct BuildChainArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "0")]
    pub column: Column,
    #[arg(long, default_value_t = 10)]
    pub states: usize,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SlemSeriesArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// The input column already holds SLEM values (one per `--rate` tick);
    /// the windowing flags are then ignored.
    #[arg(long)]
    pub slem_input: bool,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[command(flatten)]
    pub detector: DetectorArgs,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum SynthCommand {
    /// Logistic map with optional measurement or dynamic noise.
    Logistic(LogisticArgs),
    /// Synthetic arterial pressure waveform.
    Bp(SynthBpArgs),
}

#[derive(Debug, Args)]
pub struct LogisticArgs {
    #[arg(long, default_value_t = 3.8)]
    pub mu: f64,
    #[arg(long, default_value_t = 0.3)]
    pub x0: f64,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// `none`, `measurement` or `dynamic`.
    #[arg(long, default_value = "none")]
    pub noise: NoiseMode,
    #[arg(long, default_value_t = 0.0)]
    pub noise_std: f64,
    #[arg(long)]
    pub seed: u64,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthBpArgs {
    #[command(flatten)]
    pub model: BpArgs,
    #[command(flatten)]
    pub ramp: RampArgs,
    #[arg(long)]
    pub seed: u64,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// One of sfecg, hrmean, hrstd, lfhfratio, theta_s, bp_offset, bp_range.
    #[arg(long)]
    pub param: BpParam,
    /// Comma-separated parameter values (at least 4).
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<f64>,
    #[command(flatten)]
    pub model: BpArgs,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[arg(long)]
    pub seed: u64,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct RpsDetectArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub rps: RpsArgs,
    /// Seed of the mixture initialization.
    #[arg(long)]
    pub seed: u64,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// First scenario seed.
    #[arg(long)]
    pub seed_start: u64,
    /// Number of consecutive seeds.
    #[arg(long, default_value_t = 20)]
    pub seed_count: u64,
    #[arg(long, default_value_t = 100.0)]
    pub sfecg: f64,
    #[arg(long, default_value_t = 480.0)]
    pub duration: f64,
    #[arg(long, default_value_t = 360.0)]
    pub onset: f64,
    #[arg(long, default_value_t = 120.0)]
    pub ramp: f64,
    #[arg(long, default_value_t = 100.0)]
    pub hrmean_end: f64,
    #[arg(long, default_value_t = 25.0)]
    pub bp_range_end: f64,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    #[command(flatten)]
    pub detector: DetectorArgs,
    #[command(flatten)]
    pub rps: RpsArgs,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MeasuresArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Output directory; created if missing.
    #[arg(long)]
    pub out: PathBuf,
}
