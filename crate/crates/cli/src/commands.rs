//! Command bodies: read input, call the library, write files. No numerics
//! live here beyond what the library returns.

use mixrate::compare::{compare_detectors, DetectorSuite, ScenarioSet};
use mixrate::detect::{
    detect_in_series, detect_signal, slem_series, DetectionResult, DetectorConfig, DetectorMode,
    PipelineConfig, SlemPoint, SlemSeries,
};
use mixrate::markov::build_transition_matrix;
use mixrate::measures::window_measures;
use mixrate::rps::{rps_detect, RpsConfig};
use mixrate::spectral::eigen_decompose;
use mixrate::synth::{
    generate_bp_run, logistic_series, sweep_parameter, BpModelParams, LogisticParams, RegimeRamp,
};
use mixrate::timeseries::load_csv;
use mixrate::TimeSeries;

use crate::args::{
    BuildChainArgs, Command, CompareArgs, DetectArgs, InputArgs, LogisticArgs, MeasuresArgs,
    RpsDetectArgs, SlemSeriesArgs, SweepArgs, SynthBpArgs, SynthCommand,
};
use crate::manifest::{OutDir, RunManifest};
use crate::CliError;

const PAPER_MODE_CAVEAT: &str =
    "note: paper mode thresholds at the 95th percentile of the whole series, \
so most values sit below it; use --mode corrected for a baseline-only threshold";

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::BuildChain(a) => build_chain(a),
        Command::SlemSeries(a) => slem(a),
        Command::Detect(a) => detect(a),
        Command::Synth(SynthCommand::Logistic(a)) => synth_logistic(a),
        Command::Synth(SynthCommand::Bp(a)) => synth_bp(a),
        Command::Sweep(a) => sweep(a),
        Command::RpsDetect(a) => rps(a),
        Command::Compare(a) => compare(a),
        Command::Measures(a) => measures(a),
    }
}

fn read_input(a: &InputArgs, m: &mut RunManifest) -> Result<TimeSeries, CliError> {
    m.input(&a.input)
        .param("column", &a.column)
        .param("rate_hz", a.rate);
    Ok(load_csv(&a.input, &a.column, a.rate)?)
}

fn record_pipeline(m: &mut RunManifest, c: &PipelineConfig) {
    m.param("window_samples", c.window_samples)
        .param("stride_samples", c.stride_samples)
        .param("num_states", c.num_states)
        .param(
            "detrend_window",
            c.detrend_window
                .map_or("none".to_string(), |w| w.to_string()),
        )
        .param("quantizer_scope", c.quantizer_scope);
}

fn record_detector(m: &mut RunManifest, c: &DetectorConfig) {
    m.param("baseline_window", c.baseline_window)
        .param("downsample_rate", c.downsample_rate)
        .param("alpha", c.alpha)
        .param("next_window", c.next_window)
        .param("mode", c.mode);
}

fn record_rps(m: &mut RunManifest, c: &RpsConfig) {
    m.param("rps_baseline_span_s", c.baseline_span_s)
        .param("rps_d", c.d)
        .param("rps_tau", c.tau)
        .param("rps_k", c.k)
        .param("rps_threshold_percentile", c.threshold_percentile)
        .param("rps_window_s", c.window_s)
        .param("rps_consecutive_windows", c.consecutive_windows)
        .param("rps_max_iter", c.max_iter)
        .param("rps_tol", c.tol);
}

fn record_model(m: &mut RunManifest, p: &BpModelParams) {
    for (k, v) in p.to_key_values() {
        m.param(&k, v);
    }
}

fn record_ramp(m: &mut RunManifest, r: &RegimeRamp) {
    m.param("ramp_onset_s", r.onset_s)
        .param("ramp_duration_s", r.ramp_s)
        .param("hrmean_end_bpm", r.hrmean_end_bpm)
        .param("bp_range_end_mmhg", r.bp_range_end_mmhg);
}

fn build_chain(a: BuildChainArgs) -> Result<(), CliError> {
    let mut m = RunManifest::new("build-chain");
    m.input(&a.input)
        .param("column", &a.column)
        .param("num_states", a.states);
    let ts = load_csv(&a.input, &a.column, 1.0)?;
    let tm = build_transition_matrix(&ts, a.states)?;
    let spectrum = eigen_decompose(tm.probs())?;
    let mut out = OutDir::create(&a.out, m)?;
    out.write("transition.csv", &tm.to_csv())?;
    out.write("spectrum.csv", &spectrum.to_csv())?;
    out.finish()?;
    println!("slem={}", spectrum.slem_modulus());
    Ok(())
}

fn slem(a: SlemSeriesArgs) -> Result<(), CliError> {
    let mut m = RunManifest::new("slem-series");
    let ts = read_input(&a.input, &mut m)?;
    let cfg = a.pipeline.config();
    record_pipeline(&mut m, &cfg);
    let series = slem_series(&ts, &cfg)?;
    let mut out = OutDir::create(&a.out, m)?;
    out.write("slem.csv", &series.to_csv())?;
    out.finish()?;
    println!("windows={}", series.len());
    Ok(())
}

fn report(r: &DetectionResult) {
    match (r.first_alarm_index, r.first_alarm_time_s) {
        (Some(i), Some(t)) => println!("detected index={i} time_s={t} threshold={}", r.threshold),
        _ => println!("not detected threshold={}", r.threshold),
    }
}

fn detect(a: DetectArgs) -> Result<(), CliError> {
    let mut m = RunManifest::new("detect");
    let ts = read_input(&a.input, &mut m)?;
    let det = a.detector.config();
    m.param("slem_input", a.slem_input);
    let result = if a.slem_input {
        let points = ts
            .samples()
            .iter()
            .enumerate()
            .map(|(k, &v)| SlemPoint {
                t_start_s: ts.time_of(k),
                t_end_s: ts.time_of(k),
                slem: Some(v),
            })
            .collect();
        detect_in_series(&SlemSeries { points }, &det)?
    } else {
        let cfg = a.pipeline.config();
        record_pipeline(&mut m, &cfg);
        detect_signal(&ts, &cfg, &det)?
    };
    record_detector(&mut m, &det);
    if det.mode == DetectorMode::Paper {
        eprintln!("{PAPER_MODE_CAVEAT}");
    }
    let mut out = OutDir::create(&a.out, m)?;
    out.write("detection.csv", &result.to_csv())?;
    out.write("trace.csv", &result.trace_csv())?;
    out.finish()?;
    report(&result);
    Ok(())
}

fn synth_logistic(a: LogisticArgs) -> Result<(), CliError> {
    let p = LogisticParams {
        mu: a.mu,
        x0: a.x0,
        n: a.n,
        noise_mode: a.noise,
        noise_std: a.noise_std,
        seed: a.seed,
    };
    let ts = logistic_series(&p)?;
    let mut m = RunManifest::new("synth logistic");
    let params = [
        ("mu", p.mu.to_string()),
        ("x0", p.x0.to_string()),
        ("n", p.n.to_string()),
        ("noise_mode", p.noise_mode.to_string()),
        ("noise_std", p.noise_std.to_string()),
        ("seed", p.seed.to_string()),
    ];
    for (k, v) in &params {
        m.param(k, v);
    }
    let sidecar: String = params.iter().map(|(k, v)| format!("{k}={v}\n")).collect();
    let mut out = OutDir::create(&a.out, m)?;
    out.write("series.csv", &ts.to_csv("value"))?;
    out.write("series.params", &sidecar)?;
    out.finish()
}

fn synth_bp(a: SynthBpArgs) -> Result<(), CliError> {
    let p = a.model.params(a.seed);
    let ramp = a.ramp.ramp()?;
    let run = generate_bp_run(&p, ramp.as_ref())?;
    let mut m = RunManifest::new("synth bp");
    record_model(&mut m, &p);
    let mut sidecar: String = p
        .to_key_values()
        .iter()
        .map(|(k, v)| format!("{k}={v}\n"))
        .collect();
    if let Some(r) = &ramp {
        record_ramp(&mut m, r);
        sidecar.push_str(&format!(
            "ramp_onset_s={}\nramp_duration_s={}\nhrmean_end_bpm={}\nbp_range_end_mmhg={}\n",
            r.onset_s, r.ramp_s, r.hrmean_end_bpm, r.bp_range_end_mmhg
        ));
    }
    let mut out = OutDir::create(&a.out, m)?;
    out.write("series.csv", &run.pressure.to_csv("value"))?;
    out.write("series.params", &sidecar)?;
    out.finish()?;
    println!(
        "samples={} beats={}",
        run.pressure.len(),
        run.beat_times_s.len()
    );
    Ok(())
}

fn sweep(a: SweepArgs) -> Result<(), CliError> {
    let base = a.model.params(a.seed);
    let cfg = a.pipeline.config();
    let mut m = RunManifest::new("sweep");
    record_model(&mut m, &base);
    record_pipeline(&mut m, &cfg);
    m.param("param", a.param).param(
        "values",
        a.values
            .iter()
            .map(f64::to_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    let result = sweep_parameter(&base, a.param, &a.values, &cfg)?;
    let mut out = OutDir::create(&a.out, m)?;
    out.write("sweep.csv", &result.to_csv())?;
    out.write("summary.csv", &result.summary_csv())?;
    out.finish()?;
    println!(
        "param={} r={} slope={}",
        result.param, result.r, result.slope
    );
    Ok(())
}

fn rps(a: RpsDetectArgs) -> Result<(), CliError> {
    let mut m = RunManifest::new("rps-detect");
    let ts = read_input(&a.input, &mut m)?;
    let cfg = a.rps.config(a.seed);
    record_rps(&mut m, &cfg);
    m.param("seed", a.seed);
    let result = rps_detect(&ts, &cfg)?;
    let mut out = OutDir::create(&a.out, m)?;
    out.write("detection.csv", &result.to_csv())?;
    out.write("trace.csv", &result.trace_csv())?;
    out.finish()?;
    report(&result);
    Ok(())
}

fn compare(a: CompareArgs) -> Result<(), CliError> {
    let set = ScenarioSet {
        base: BpModelParams {
            sfecg_hz: a.sfecg,
            duration_s: a.duration,
            ..Default::default()
        },
        ramp: RegimeRamp {
            onset_s: a.onset,
            ramp_s: a.ramp,
            hrmean_end_bpm: a.hrmean_end,
            bp_range_end_mmhg: a.bp_range_end,
        },
        seeds: (a.seed_start..a.seed_start + a.seed_count).collect(),
    };
    let suite = DetectorSuite {
        pipeline: a.pipeline.config(),
        detector: a.detector.config(),
        rps: a.rps.config(0),
    };
    let mut m = RunManifest::new("compare");
    record_model(&mut m, &set.base);
    record_ramp(&mut m, &set.ramp);
    m.param("seed_start", a.seed_start)
        .param("seed_count", a.seed_count);
    record_pipeline(&mut m, &suite.pipeline);
    record_detector(&mut m, &suite.detector);
    record_rps(&mut m, &suite.rps);
    if suite.detector.mode == DetectorMode::Paper {
        eprintln!("{PAPER_MODE_CAVEAT}");
    }
    let comparison = compare_detectors(&set, &suite)?;
    let mut summary = String::from("detector,runs,false_alarms,hits\n");
    for s in comparison.summaries() {
        summary.push_str(&format!(
            "{},{},{},{}\n",
            s.detector, s.runs, s.false_alarms, s.hits
        ));
        println!(
            "{}: false alarms {}/{} hits {}/{}",
            s.detector, s.false_alarms, s.runs, s.hits, s.runs
        );
    }
    let mut out = OutDir::create(&a.out, m)?;
    out.write("comparison.csv", &comparison.to_csv())?;
    out.write("summary.csv", &summary)?;
    out.finish()
}

fn measures(a: MeasuresArgs) -> Result<(), CliError> {
    let mut m = RunManifest::new("measures");
    let ts = read_input(&a.input, &mut m)?;
    let cfg = a.pipeline.config();
    record_pipeline(&mut m, &cfg);
    let table = window_measures(&ts, &cfg)?;
    let mut out = OutDir::create(&a.out, m)?;
    out.write("measures.csv", &table.to_csv())?;
    out.write("correlations.csv", &table.correlations_csv())?;
    out.finish()?;
    for c in table.correlations().iter().filter(|c| c.a == "slem") {
        match c.r {
            Some(r) => println!("r(slem, {}) = {r:.4}", c.b),
            None => println!("r(slem, {}) undefined", c.b),
        }
    }
    Ok(())
}
