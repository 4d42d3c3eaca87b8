//! Mixture fitting against known generating densities, and the
//! phase-space detector's output contract.

use mixrate::detect::{detect_signal, DetectionResult, DetectorConfig, PipelineConfig};
use mixrate::rps::{embed, fit_gmm, rps_detect, score_loglik, Embedding, RpsConfig};
use mixrate::synth::{generate_bp, BpModelParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::PI;

/// Two well-separated 2-D Gaussians with correlated axes.
struct Truth {
    weights: [f64; 2],
    means: [[f64; 2]; 2],
    /// Lower Cholesky factors `[l11, l21, l22]`.
    chol: [[f64; 3]; 2],
}

impl Truth {
    fn new() -> Self {
        Self {
            weights: [0.3, 0.7],
            means: [[-3.0, 0.0], [2.0, 1.0]],
            chol: [[1.0, 0.5, 0.5], [0.7, -0.3, 1.2]],
        }
    }

    fn sample(&self, n: usize, seed: u64) -> Vec<[f64; 2]> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|i| {
                let c = usize::from(i as f64 >= self.weights[0] * n as f64);
                let (e1, e2): (f64, f64) = (
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                );
                let [l11, l21, l22] = self.chol[c];
                [
                    self.means[c][0] + l11 * e1,
                    self.means[c][1] + l21 * e1 + l22 * e2,
                ]
            })
            .collect()
    }

    /// Closed-form bivariate normal mixture log density.
    fn log_density(&self, p: &[f64; 2]) -> f64 {
        let mut total = 0.0;
        for c in 0..2 {
            let [l11, l21, l22] = self.chol[c];
            let (s11, s12, s22) = (l11 * l11, l11 * l21, l21 * l21 + l22 * l22);
            let det = s11 * s22 - s12 * s12;
            let (dx, dy) = (p[0] - self.means[c][0], p[1] - self.means[c][1]);
            let q = (s22 * dx * dx - 2.0 * s12 * dx * dy + s11 * dy * dy) / det;
            total += self.weights[c] * (-0.5 * q).exp() / (2.0 * PI * det.sqrt());
        }
        total.ln()
    }
}

#[test]
fn held_out_likelihood_matches_the_generating_density() {
    let truth = Truth::new();
    let train = Embedding::from_points(&truth.sample(4000, 1)).unwrap();
    let test_points = truth.sample(4000, 2);
    let model = fit_gmm(&train, 2, 0, 500, 1e-9).unwrap();
    let ours = score_loglik(&model, &Embedding::from_points(&test_points).unwrap()).unwrap();
    let oracle: Vec<f64> = test_points.iter().map(|p| truth.log_density(p)).collect();
    let n = oracle.len() as f64;
    let mean = oracle.iter().sum::<f64>() / n;
    let se = (oracle.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt() / n.sqrt();
    assert!(
        (ours - mean).abs() <= 3.0 * se,
        "held-out {ours} vs true {mean} (SE {se})"
    );
}

#[test]
fn single_component_is_the_sample_gaussian() {
    let pts = Truth::new().sample(1000, 3);
    let model = fit_gmm(&Embedding::from_points(&pts).unwrap(), 1, 9, 50, 1e-10).unwrap();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p[0]).sum::<f64>() / n;
    let my = pts.iter().map(|p| p[1]).sum::<f64>() / n;
    let cxy = pts.iter().map(|p| (p[0] - mx) * (p[1] - my)).sum::<f64>() / n;
    let c = &model.components[0];
    assert!((c.weight - 1.0).abs() < 1e-12);
    assert!((c.mean[0] - mx).abs() < 1e-9 && (c.mean[1] - my).abs() < 1e-9);
    assert!((c.covariance[1] - cxy).abs() < 1e-9);
}

#[test]
fn fit_and_detection_are_deterministic() {
    let pts = Embedding::from_points(&Truth::new().sample(600, 4)).unwrap();
    assert_eq!(
        fit_gmm(&pts, 3, 5, 100, 1e-8).unwrap(),
        fit_gmm(&pts, 3, 5, 100, 1e-8).unwrap()
    );

    let ts = generate_bp(&BpModelParams {
        sfecg_hz: 100.0,
        duration_s: 120.0,
        seed: 2,
        ..Default::default()
    })
    .unwrap();
    let cfg = RpsConfig {
        baseline_span_s: 60.0,
        ..Default::default()
    };
    let a = rps_detect(&ts, &cfg).unwrap();
    assert_eq!(a, rps_detect(&ts, &cfg).unwrap());
    assert_eq!(a.series.len(), 24);
    assert!(a.first_alarm_index.is_none_or(|i| i >= 12));
    assert_eq!(embed(&ts, 3, 2).unwrap().len(), ts.len() - 4);
}

#[test]
fn both_detectors_report_the_same_shape() {
    let ts = generate_bp(&BpModelParams {
        sfecg_hz: 100.0,
        duration_s: 200.0,
        seed: 3,
        ..Default::default()
    })
    .unwrap();
    let slem: DetectionResult = detect_signal(
        &ts,
        &PipelineConfig::default(),
        &DetectorConfig {
            baseline_window: 20,
            ..Default::default()
        },
    )
    .unwrap();
    let rps: DetectionResult = rps_detect(
        &ts,
        &RpsConfig {
            baseline_span_s: 100.0,
            ..Default::default()
        },
    )
    .unwrap();
    for r in [&slem, &rps] {
        assert_eq!(r.detected, r.first_alarm_index.is_some());
        assert_eq!(
            r.csv_row().split(',').count(),
            DetectionResult::csv_header().split(',').count()
        );
    }
}
