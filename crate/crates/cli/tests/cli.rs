//! End-to-end runs of the `mixrate` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mixrate::markov::build_transition_matrix;
use mixrate::spectral::eigen_decompose;
use mixrate::synth::{logistic_series, LogisticParams};
use tempfile::TempDir;

fn mixrate(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixrate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = mixrate(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

fn write_column(dir: &Path, name: &str, values: &[f64]) -> String {
    let text: String = values.iter().map(|v| format!("{v}\n")).collect();
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn manifest(dir: &Path) -> Vec<(String, String)> {
    read(dir, "manifest.txt")
        .lines()
        .map(|l| {
            let (k, v) = l.split_once('=').expect("key=value");
            (k.to_string(), v.to_string())
        })
        .collect()
}

#[test]
fn synth_is_deterministic_and_reproducible_from_its_manifest() {
    let tmp = TempDir::new().unwrap();
    let args = |out: &str| {
        vec![
            "synth".to_string(),
            "logistic".into(),
            "--mu".into(),
            "3.8".into(),
            "--n".into(),
            "1000".into(),
            "--noise".into(),
            "measurement".into(),
            "--noise-std".into(),
            "0.1".into(),
            "--seed".into(),
            "1".into(),
            "--out".into(),
            out.to_string(),
        ]
    };
    let (a, b) = (path(tmp.path(), "a"), path(tmp.path(), "b"));
    ok(&args(&a).iter().map(String::as_str).collect::<Vec<_>>());
    ok(&args(&b).iter().map(String::as_str).collect::<Vec<_>>());
    let (a, b) = (PathBuf::from(a), PathBuf::from(b));
    assert_eq!(
        fs::read(a.join("series.csv")).unwrap(),
        fs::read(b.join("series.csv")).unwrap()
    );
    assert_eq!(read(&a, "series.params"), read(&b, "series.params"));
    assert!(read(&a, "series.csv").starts_with("value\n"));

    // Rebuild the command line from the manifest alone.
    let m = manifest(&a);
    let get = |k: &str| {
        m.iter()
            .find(|(key, _)| key == k)
            .map(|(_, v)| v.clone())
            .unwrap()
    };
    assert_eq!(get("command"), "synth logistic");
    let c = path(tmp.path(), "c");
    let rebuilt = [
        "synth",
        "logistic",
        "--mu",
        &get("mu"),
        "--x0",
        &get("x0"),
        "--n",
        &get("n"),
        "--noise",
        &get("noise_mode"),
        "--noise-std",
        &get("noise_std"),
        "--seed",
        &get("seed"),
        "--out",
        &c,
    ];
    ok(&rebuilt);
    assert_eq!(read(&a, "series.csv"), read(Path::new(&c), "series.csv"));
}

#[test]
fn seeds_are_mandatory() {
    let tmp = TempDir::new().unwrap();
    let out = mixrate(&["synth", "bp", "--out", &path(tmp.path(), "x")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--seed"));
}

#[test]
fn build_chain_matches_the_library() {
    let tmp = TempDir::new().unwrap();
    let p = LogisticParams {
        x0: 0.3,
        n: 1000,
        ..Default::default()
    };
    let ts = logistic_series(&p).unwrap();
    let input = write_column(tmp.path(), "logistic.csv", ts.samples());
    let out = tmp.path().join("chain");
    ok(&[
        "build-chain",
        "--input",
        &input,
        "--states",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]);
    let tm = build_transition_matrix(&ts, 10).unwrap();
    assert_eq!(read(&out, "transition.csv"), tm.to_csv());
    assert_eq!(
        read(&out, "spectrum.csv"),
        eigen_decompose(tm.probs()).unwrap().to_csv()
    );
    let m = manifest(&out);
    assert_eq!(m.iter().filter(|(k, _)| k == "output").count(), 2);
    let files: Vec<_> = fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    assert_eq!(files.iter().filter(|f| *f == "manifest.txt").count(), 1);
}

#[test]
fn alternating_series_gives_the_swap_chain() {
    let tmp = TempDir::new().unwrap();
    let x: Vec<f64> = (0..20).map(|k| (k % 2) as f64 * 3.0 + 1.0).collect();
    let input = write_column(tmp.path(), "alt.csv", &x);
    let out = tmp.path().join("chain");
    ok(&[
        "build-chain",
        "--input",
        &input,
        "--states",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    let rows: Vec<Vec<f64>> = read(&out, "transition.csv")
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    let mut re: Vec<f64> = read(&out, "spectrum.csv")
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    re.sort_by(f64::total_cmp);
    assert!((re[0] + 1.0).abs() < 1e-12 && (re[1] - 1.0).abs() < 1e-12);
}

#[test]
fn constant_series_is_a_validation_error() {
    let tmp = TempDir::new().unwrap();
    let input = write_column(tmp.path(), "const.csv", &[5.0; 10]);
    let out = mixrate(&[
        "build-chain",
        "--input",
        &input,
        "--out",
        &path(tmp.path(), "x"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate range"));
}

#[test]
fn numerical_failure_exits_with_two() {
    let tmp = TempDir::new().unwrap();
    // A constant signal collapses every mixture covariance.
    let input = write_column(tmp.path(), "flat.csv", &[1.0; 400]);
    let out = mixrate(&[
        "rps-detect",
        "--input",
        &input,
        "--rate",
        "10",
        "--baseline-s",
        "20",
        "--seed",
        "0",
        "--out",
        &path(tmp.path(), "x"),
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

/// Literal scan over a decimated series: thresholds per mode, start at the
/// baseline length, alarm on `n` consecutive values strictly below.
fn step_through(slem: &[f64], corrected: bool) -> Option<usize> {
    let u: Vec<f64> = slem.iter().step_by(4).copied().collect();
    let (b, n) = (75, 4);
    let pct = |v: &[f64], p: f64| {
        let mut s = v.to_vec();
        s.sort_by(f64::total_cmp);
        let rank = p / 100.0 * (s.len() - 1) as f64;
        let (lo, hi) = (rank.floor() as usize, rank.ceil() as usize);
        s[lo] + (rank - lo as f64) * (s[hi] - s[lo])
    };
    let threshold = if corrected {
        pct(&u[..b], 5.0)
    } else {
        pct(&u, 95.0)
    };
    let last = if corrected {
        u.len() - n
    } else {
        b + (u.len() - b) / n - 2
    };
    (b..=last).find(|&i| u[i..i + n].iter().all(|&v| v < threshold))
}

#[test]
fn detect_modes_match_the_step_through_on_a_step_down() {
    let tmp = TempDir::new().unwrap();
    let fixture: Vec<f64> = (0..600)
        .map(|k| (if k < 400 { 0.9 } else { 0.5 }) + 0.002 * (k as f64 * 1.7).sin())
        .collect();
    let input = write_column(tmp.path(), "slem.csv", &fixture);
    for (mode, corrected) in [("paper", false), ("corrected", true)] {
        let out_dir = tmp.path().join(mode);
        let out = ok(&[
            "detect",
            "--input",
            &input,
            "--rate",
            "1",
            "--slem-input",
            "--mode",
            mode,
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        let caveat = String::from_utf8_lossy(&out.stderr).contains("paper mode");
        assert_eq!(caveat, !corrected);
        let csv = read(&out_dir, "detection.csv");
        let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row[0], "true");
        let expected = step_through(&fixture, corrected).expect("fixture must alarm");
        assert_eq!(row[1], expected.to_string(), "{mode}");
        assert_eq!(row[4], mode);
    }
}

#[test]
fn measures_on_a_regime_change_relate_slem_to_chain_structure() {
    let tmp = TempDir::new().unwrap();
    let bp = tmp.path().join("bp");
    ok(&[
        "synth",
        "bp",
        "--sfecg",
        "100",
        "--duration",
        "480",
        "--seed",
        "1",
        "--ramp-onset",
        "200",
        "--ramp-duration",
        "120",
        "--hrmean-end",
        "100",
        "--bp-range-end",
        "25",
        "--out",
        bp.to_str().unwrap(),
    ]);
    assert!(read(&bp, "series.params").contains("ramp_onset_s=200\n"));
    let out = tmp.path().join("measures");
    ok(&[
        "measures",
        "--input",
        &path(&bp, "series.csv"),
        "--column",
        "value",
        "--rate",
        "100",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(
        read(&out, "measures.csv").starts_with("t_s,slem,s1,s2,v1,v2,density,self_transition\n")
    );
    let r = |b: &str| -> f64 {
        read(&out, "correlations.csv")
            .lines()
            .find(|l| l.starts_with(&format!("slem,{b},")))
            .and_then(|l| l.rsplit(',').next())
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!(r("density") < 0.0, "r(slem, density) = {}", r("density"));
    assert!(r("self_transition") > 0.0);
}

#[test]
fn slem_series_sweep_and_compare_write_their_tables() {
    let tmp = TempDir::new().unwrap();
    let bp = tmp.path().join("bp");
    ok(&[
        "synth",
        "bp",
        "--sfecg",
        "100",
        "--duration",
        "60",
        "--seed",
        "4",
        "--out",
        bp.to_str().unwrap(),
    ]);
    let slem = tmp.path().join("slem");
    ok(&[
        "slem-series",
        "--input",
        &path(&bp, "series.csv"),
        "--column",
        "value",
        "--rate",
        "100",
        "--out",
        slem.to_str().unwrap(),
    ]);
    let text = read(&slem, "slem.csv");
    assert!(text.starts_with("t_s,slem\n"));
    assert_eq!(text.lines().count(), 1 + 41);

    let sweep = tmp.path().join("sweep");
    ok(&[
        "sweep",
        "--param",
        "hrmean",
        "--values",
        "50,70,90,110",
        "--sfecg",
        "100",
        "--seed",
        "0",
        "--out",
        sweep.to_str().unwrap(),
    ]);
    assert_eq!(read(&sweep, "sweep.csv").lines().count(), 5);
    assert!(read(&sweep, "summary.csv").starts_with("param,r,slope\nhrmean,"));

    let cmp = tmp.path().join("compare");
    ok(&[
        "compare",
        "--seed-start",
        "3",
        "--seed-count",
        "1",
        "--duration",
        "200",
        "--onset",
        "120",
        "--ramp",
        "30",
        "--sfecg",
        "50",
        "--window",
        "500",
        "--stride",
        "50",
        "--detrend",
        "500",
        "--baseline",
        "40",
        "--baseline-s",
        "100",
        "--mode",
        "corrected",
        "--out",
        cmp.to_str().unwrap(),
    ]);
    let csv = read(&cmp, "comparison.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "detector,scenario,detected,time_to_detect_s");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("slem-corrected,stationary-3,"));
    assert!(lines[2].starts_with("rps,stationary-3,"));
    assert!(read(&cmp, "summary.csv").starts_with("detector,runs,false_alarms,hits\n"));
}
