//! The demo operations, run natively.

use mixrate::markov::build_transition_matrix;
use mixrate::spectral::slem_of_series;
use mixrate::synth::{logistic_series, LogisticParams};
use mixrate_wasm::{bp_slem_impl, detect_run_impl, logistic_spectrum_impl};

#[test]
fn logistic_spectrum_agrees_with_the_library() {
    let r = logistic_spectrum_impl(3.8, "none", 0.0, 1000, 10, 1).unwrap();
    let ts = logistic_series(&LogisticParams::default()).unwrap();
    assert_eq!(r.series(), ts.samples());
    assert_eq!(
        r.matrix(),
        build_transition_matrix(&ts, 10).unwrap().probs().as_slice()
    );
    assert_eq!(r.eig_re().len(), 10);
    assert!((r.slem() - slem_of_series(&ts, 10).unwrap()).abs() < 1e-12);
    assert!((r.eig_re()[0] - 1.0).abs() < 1e-9);
}

#[test]
fn bad_inputs_are_reported_not_panicked() {
    assert!(logistic_spectrum_impl(3.8, "loud", 0.1, 1000, 10, 1).is_err());
    assert!(logistic_spectrum_impl(5.0, "none", 0.0, 1000, 10, 1).is_err());
    assert!(bp_slem_impl(60.0, 1.0, 10.0, 10, 0).is_err());
}

#[test]
fn faster_heart_rate_lowers_mean_slem() {
    let slow = bp_slem_impl(50.0, 1.0, 60.0, 10, 2).unwrap();
    let fast = bp_slem_impl(110.0, 1.0, 60.0, 10, 2).unwrap();
    assert_eq!(slow.slem().len(), slow.slem_t().len());
    assert_eq!(slow.signal().len(), 2000);
    assert!(fast.mean_slem() < slow.mean_slem());
}

#[test]
fn detector_run_reports_both_traces() {
    let r = detect_run_impl(true, true, 0).unwrap();
    assert_eq!(r.onset_s(), 360.0);
    assert_eq!(r.slem().len(), r.slem_t().len());
    assert_eq!(r.rps_score().len(), 96);
    assert!(r.signal().len() <= 4000);
    let stationary = detect_run_impl(false, true, 0).unwrap();
    assert!(stationary.onset_s().is_nan());
}
