//! Full-covariance Gaussian mixtures fit by expectation-maximization.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Embedding;
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::spectral::symmetric_eigen;

/// Covariance eigenvalues are kept at or above this fraction of the mean
/// eigenvalue (`trace / d`).
pub const COVARIANCE_FLOOR: f64 = 1e-6;

/// Lloyd iterations used to seed EM.
const KMEANS_ITERS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianComponent {
    pub weight: f64,
    pub mean: Vec<f64>,
    /// Row-major `d x d`.
    pub covariance: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GmmModel {
    pub dim: usize,
    pub components: Vec<GaussianComponent>,
    /// Mean per-point log-likelihood after initialization and after every
    /// EM step. The fitted parameters belong to the last entry.
    pub loglik_trace: Vec<f64>,
}

impl GmmModel {
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Log-density of a single point.
    pub fn log_density(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let prepared = prepare(self)?;
        let mut buf = vec![0.0; self.components.len()];
        Ok(log_mixture(&prepared, x, &mut buf))
    }
}

/// Cholesky factor and log normalizer of one weighted component.
struct Prepared {
    mean: Vec<f64>,
    chol: Vec<f64>,
    /// `log w - d/2 log(2 pi) - 1/2 log det(Sigma)`
    log_const: f64,
}

fn prepare(model: &GmmModel) -> Result<Vec<Prepared>> {
    let d = model.dim;
    model
        .components
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let chol =
                cholesky(&c.covariance, d).ok_or(Error::CovarianceCollapse { component: k })?;
            let half_log_det: f64 = (0..d).map(|i| chol[i * d + i].ln()).sum();
            Ok(Prepared {
                mean: c.mean.clone(),
                chol,
                log_const: c.weight.ln() - 0.5 * d as f64 * (2.0 * PI).ln() - half_log_det,
            })
        })
        .collect()
}

fn cholesky(a: &[f64], d: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i * d + k] * l[j * d + k]).sum();
            if i == j {
                let v = a[i * d + i] - s;
                if !(v > 0.0 && v.is_finite()) {
                    return None;
                }
                l[i * d + i] = v.sqrt();
            } else {
                l[i * d + j] = (a[i * d + j] - s) / l[j * d + j];
            }
        }
    }
    Some(l)
}

/// Weighted log-density of `x` under each component, written to `out`.
fn component_logs(prepared: &[Prepared], x: &[f64], out: &mut [f64]) {
    let d = x.len();
    let mut z = [0.0f64; 16];
    let mut zv;
    let z: &mut [f64] = if d <= 16 {
        &mut z[..d]
    } else {
        zv = vec![0.0; d];
        &mut zv
    };
    for (p, o) in prepared.iter().zip(out.iter_mut()) {
        // Forward substitution L z = x - mu.
        let mut q = 0.0;
        for i in 0..d {
            let s: f64 = (0..i).map(|k| p.chol[i * d + k] * z[k]).sum();
            z[i] = (x[i] - p.mean[i] - s) / p.chol[i * d + i];
            q += z[i] * z[i];
        }
        *o = p.log_const - 0.5 * q;
    }
}

fn log_sum_exp(v: &[f64]) -> f64 {
    let m = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

fn log_mixture(prepared: &[Prepared], x: &[f64], buf: &mut [f64]) -> f64 {
    component_logs(prepared, x, buf);
    log_sum_exp(buf)
}

/// Mean per-point log-density of `points` under `model`.
pub fn score_loglik(model: &GmmModel, points: &Embedding) -> Result<f64> {
    if points.dim() != model.dim {
        return Err(Error::DimensionMismatch {
            expected: model.dim,
            got: points.dim(),
        });
    }
    if points.is_empty() {
        return Err(Error::TooShort { needed: 1, got: 0 });
    }
    let prepared = prepare(model)?;
    let mut buf = vec![0.0; model.components.len()];
    let total: f64 = points
        .iter()
        .map(|x| log_mixture(&prepared, x, &mut buf))
        .sum();
    Ok(total / points.len() as f64)
}

/// E-step: responsibilities (row-major `n x K`) and mean log-likelihood.
fn expectation(model: &GmmModel, points: &Embedding, resp: &mut [f64]) -> Result<f64> {
    let prepared = prepare(model)?;
    let k = model.components.len();
    let mut total = 0.0;
    for (x, r) in points.iter().zip(resp.chunks_mut(k)) {
        component_logs(&prepared, x, r);
        let lse = log_sum_exp(r);
        for v in r.iter_mut() {
            *v = (*v - lse).exp();
        }
        total += lse;
    }
    Ok(total / points.len() as f64)
}

/// M-step from responsibilities.
fn maximization(points: &Embedding, resp: &[f64], k: usize) -> Result<Vec<GaussianComponent>> {
    let d = points.dim();
    let n = points.len();
    let mut comps = Vec::with_capacity(k);
    for c in 0..k {
        let nk: f64 = (0..n).map(|i| resp[i * k + c]).sum();
        if !(nk > 0.0) {
            return Err(Error::CovarianceCollapse { component: c });
        }
        let mut mean = vec![0.0; d];
        for (i, x) in points.iter().enumerate() {
            let r = resp[i * k + c];
            for j in 0..d {
                mean[j] += r * x[j];
            }
        }
        mean.iter_mut().for_each(|m| *m /= nk);
        let mut cov = vec![0.0; d * d];
        for (i, x) in points.iter().enumerate() {
            let r = resp[i * k + c];
            for a in 0..d {
                let da = x[a] - mean[a];
                for b in a..d {
                    cov[a * d + b] += r * da * (x[b] - mean[b]);
                }
            }
        }
        for a in 0..d {
            for b in a..d {
                cov[a * d + b] /= nk;
                cov[b * d + a] = cov[a * d + b];
            }
        }
        let covariance =
            floor_covariance(&cov, d).ok_or(Error::CovarianceCollapse { component: c })?;
        comps.push(GaussianComponent {
            weight: nk / n as f64,
            mean,
            covariance,
        });
    }
    Ok(comps)
}

/// Raises every eigenvalue to at least `COVARIANCE_FLOOR * trace / d`.
/// Returns `None` for a zero (or non-finite) trace, where no floor exists.
fn floor_covariance(cov: &[f64], d: usize) -> Option<Vec<f64>> {
    let trace: f64 = (0..d).map(|i| cov[i * d + i]).sum();
    if !(trace > 0.0 && trace.is_finite()) {
        return None;
    }
    let eps = COVARIANCE_FLOOR * trace / d as f64;
    let m = SquareMatrix::from_row_major(d, cov.to_vec()).ok()?;
    let (vals, vecs) = symmetric_eigen(&m);
    if vals.iter().all(|&v| v >= eps) {
        return Some(cov.to_vec());
    }
    let mut out = vec![0.0; d * d];
    for (e, &lam) in vals.iter().enumerate() {
        let lam = lam.max(eps);
        for a in 0..d {
            for b in 0..d {
                out[a * d + b] += lam * vecs[(a, e)] * vecs[(b, e)];
            }
        }
    }
    for a in 0..d {
        for b in 0..a {
            let v = 0.5 * (out[a * d + b] + out[b * d + a]);
            out[a * d + b] = v;
            out[b * d + a] = v;
        }
    }
    Some(out)
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// k-means++ seeding followed by a few Lloyd iterations; returns hard
/// assignments.
fn kmeans_assign(points: &Embedding, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = points.len();
    let mut centers: Vec<Vec<f64>> = vec![points.point(rng.random_range(0..n)).to_vec()];
    let mut d2: Vec<f64> = points.iter().map(|x| sq_dist(x, &centers[0])).collect();
    while centers.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut u = rng.random::<f64>() * total;
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if u < w {
                    pick = i;
                    break;
                }
                u -= w;
            }
            pick
        } else {
            rng.random_range(0..n)
        };
        let c = points.point(next).to_vec();
        for (i, x) in points.iter().enumerate() {
            d2[i] = d2[i].min(sq_dist(x, &c));
        }
        centers.push(c);
    }

    let d = points.dim();
    let mut assign = vec![0usize; n];
    for _ in 0..KMEANS_ITERS {
        let mut changed = false;
        for (i, x) in points.iter().enumerate() {
            let best = (0..k)
                .min_by(|&a, &b| sq_dist(x, &centers[a]).total_cmp(&sq_dist(x, &centers[b])))
                .expect("k >= 1");
            if best != assign[i] {
                assign[i] = best;
                changed = true;
            }
        }
        let mut sums = vec![vec![0.0; d]; k];
        let mut counts = vec![0usize; k];
        for (x, &a) in points.iter().zip(&assign) {
            counts[a] += 1;
            for j in 0..d {
                sums[a][j] += x[j];
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centers[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
        if !changed {
            break;
        }
    }
    assign
}

/// Initial mixture from hard assignments. Clusters too small to support a
/// covariance borrow the pooled one.
fn initial_model(points: &Embedding, assign: &[usize], k: usize) -> Result<GmmModel> {
    let n = points.len();
    let d = points.dim();
    let all = vec![1.0; n];
    let pooled = maximization(points, &all, 1)?.remove(0);
    let mut components = Vec::with_capacity(k);
    for c in 0..k {
        let resp: Vec<f64> = assign
            .iter()
            .map(|&a| if a == c { 1.0 } else { 0.0 })
            .collect();
        let count = resp.iter().sum::<f64>();
        let comp = if count > d as f64 {
            let mut m = maximization(points, &resp, 1)?.remove(0);
            m.weight = count / n as f64;
            m
        } else {
            GaussianComponent {
                weight: count.max(1.0) / n as f64,
                mean: pooled.mean.clone(),
                covariance: pooled.covariance.clone(),
            }
        };
        components.push(comp);
    }
    let total: f64 = components.iter().map(|c| c.weight).sum();
    components.iter_mut().for_each(|c| c.weight /= total);
    Ok(GmmModel {
        dim: d,
        components,
        loglik_trace: Vec::new(),
    })
}

/// Fits a `k`-component mixture. EM stops after `max_iter` steps or once
/// the mean log-likelihood gains less than `tol` in a step.
pub fn fit_gmm(
    points: &Embedding,
    k: usize,
    seed: u64,
    max_iter: usize,
    tol: f64,
) -> Result<GmmModel> {
    if k == 0 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tol must be non-negative, got {tol}"
        )));
    }
    let needed = 10 * k * points.dim();
    if points.len() < needed {
        return Err(Error::TooShort {
            needed,
            got: points.len(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let assign = kmeans_assign(points, k, &mut rng);
    let mut model = initial_model(points, &assign, k)?;
    let mut resp = vec![0.0; points.len() * k];
    let mut ll = expectation(&model, points, &mut resp)?;
    let mut trace = vec![ll];
    for _ in 0..max_iter {
        let next = GmmModel {
            dim: model.dim,
            components: maximization(points, &resp, k)?,
            loglik_trace: Vec::new(),
        };
        let next_ll = expectation(&next, points, &mut resp)?;
        trace.push(next_ll);
        model = next;
        let gain = next_ll - ll;
        ll = next_ll;
        if gain < tol {
            break;
        }
    }
    model.loglik_trace = trace;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand_distr::{Distribution, Normal};

    fn emb(rows: &[Vec<f64>]) -> Embedding {
        Embedding::from_points(rows).unwrap()
    }

    fn two_clusters(seed: u64) -> Embedding {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nrm = Normal::new(0.0, 1.0).unwrap();
        let mut rows = Vec::new();
        for c in [-5.0, 5.0] {
            for _ in 0..500 {
                rows.push(vec![c + nrm.sample(&mut rng), c + nrm.sample(&mut rng)]);
            }
        }
        emb(&rows)
    }

    #[test]
    fn single_component_is_sample_moments() {
        // {0, 2} repeated to meet the point-count floor.
        let rows: Vec<Vec<f64>> = (0..10).map(|i| vec![(i % 2) as f64 * 2.0]).collect();
        let m = fit_gmm(&emb(&rows), 1, 0, 50, 1e-12).unwrap();
        assert_abs_diff_eq!(m.components[0].mean[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.components[0].covariance[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m.components[0].weight, 1.0, epsilon = 1e-15);

        let pts = two_clusters(3);
        let m = fit_gmm(&pts, 1, 0, 50, 1e-12).unwrap();
        let n = pts.len() as f64;
        for j in 0..2 {
            let mu: f64 = pts.iter().map(|x| x[j]).sum::<f64>() / n;
            assert_abs_diff_eq!(m.components[0].mean[j], mu, epsilon = 1e-10);
        }
        let (m0, m1) = (m.components[0].mean[0], m.components[0].mean[1]);
        let c01: f64 = pts.iter().map(|x| (x[0] - m0) * (x[1] - m1)).sum::<f64>() / n;
        assert_abs_diff_eq!(m.components[0].covariance[1], c01, epsilon = 1e-9);
    }

    #[test]
    fn recovers_two_clusters() {
        for seed in 0..5 {
            let m = fit_gmm(&two_clusters(seed), 2, seed, 200, 1e-9).unwrap();
            let mut comps = m.components.clone();
            comps.sort_by(|a, b| a.mean[0].total_cmp(&b.mean[0]));
            for (c, truth) in comps.iter().zip([-5.0, 5.0]) {
                assert!((c.mean[0] - truth).abs() < 0.3 && (c.mean[1] - truth).abs() < 0.3);
                assert!((c.weight - 0.5).abs() < 0.1);
            }
            let w: f64 = m.components.iter().map(|c| c.weight).sum();
            assert_abs_diff_eq!(w, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn trace_is_monotone_and_fit_is_deterministic() {
        let pts = two_clusters(11);
        let a = fit_gmm(&pts, 4, 7, 100, 0.0).unwrap();
        for w in a.loglik_trace.windows(2) {
            assert!(w[1] >= w[0] - 1e-9, "{} -> {}", w[0], w[1]);
        }
        assert_eq!(a, fit_gmm(&pts, 4, 7, 100, 0.0).unwrap());
    }

    #[test]
    fn unit_gaussian_peak() {
        for d in 1..=4 {
            let mut cov = vec![0.0; d * d];
            (0..d).for_each(|i| cov[i * d + i] = 1.0);
            let m = GmmModel {
                dim: d,
                components: vec![GaussianComponent {
                    weight: 1.0,
                    mean: vec![0.0; d],
                    covariance: cov,
                }],
                loglik_trace: vec![],
            };
            let got = score_loglik(&m, &emb(&[vec![0.0; d]])).unwrap();
            assert_abs_diff_eq!(got, -(d as f64) / 2.0 * (2.0 * PI).ln(), epsilon = 1e-12);
        }
    }

    #[test]
    fn far_points_score_lower_and_dimension_checked() {
        let pts = two_clusters(5);
        let m = fit_gmm(&pts, 2, 0, 100, 1e-9).unwrap();
        let shifted: Vec<Vec<f64>> = pts.iter().map(|x| vec![x[0] + 50.0, x[1] - 50.0]).collect();
        assert!(score_loglik(&m, &pts).unwrap() > score_loglik(&m, &emb(&shifted)).unwrap());
        let wrong = emb(&[vec![0.0, 0.0, 0.0]]);
        assert!(matches!(
            score_loglik(&m, &wrong),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn degenerate_data_collapses() {
        let rows = vec![vec![1.0, 1.0]; 100];
        assert!(matches!(
            fit_gmm(&emb(&rows), 2, 0, 10, 1e-6),
            Err(Error::CovarianceCollapse { .. })
        ));
        assert!(matches!(
            fit_gmm(&emb(&rows[..5]), 1, 0, 10, 1e-6),
            Err(Error::TooShort { .. })
        ));
    }

    #[test]
    fn floor_lifts_small_eigenvalues() {
        let cov = [1.0, 1.0, 1.0, 1.0];
        let f = floor_covariance(&cov, 2).unwrap();
        let (vals, _) = symmetric_eigen(&SquareMatrix::from_row_major(2, f).unwrap());
        let eps = COVARIANCE_FLOOR * 2.0 / 2.0;
        assert!(vals.iter().all(|&v| v >= eps * (1.0 - 1e-9)));
        assert!(cholesky(&floor_covariance(&cov, 2).unwrap(), 2).is_some());
    }
}
