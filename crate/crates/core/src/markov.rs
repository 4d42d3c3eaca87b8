//! Empirical first-order Markov chains over equal-width amplitude states.
//!
//! States are numbered `1..=m` in the public API, matching the bin numbers
//! produced by [`Quantizer::quantize`].

use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::timeseries::TimeSeries;

/// Row sums further than this from 1 make a row non-stochastic.
pub const ROW_SUM_TOL: f64 = 1e-12;

/// Equal-width binning of `[min, max]` into `num_states` bins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantizer {
    min_value: f64,
    max_value: f64,
    num_states: usize,
    bin_width: f64,
}

impl Quantizer {
    pub fn new(min_value: f64, max_value: f64, num_states: usize) -> Result<Self> {
        if num_states < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 states, got {num_states}"
            )));
        }
        if !(min_value.is_finite() && max_value.is_finite()) {
            return Err(Error::InvalidParameter(
                "quantizer range must be finite".into(),
            ));
        }
        if max_value <= min_value {
            return Err(Error::DegenerateRange { value: min_value });
        }
        Ok(Self {
            min_value,
            max_value,
            num_states,
            bin_width: (max_value - min_value) / num_states as f64,
        })
    }

    pub fn min_value(&self) -> f64 {
        self.min_value
    }

    pub fn max_value(&self) -> f64 {
        self.max_value
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }

    /// Bin number in `1..=m`: `floor((x - min) / width) + 1`, clamped.
    /// The maximum itself (bin `m + 1`) lands in bin `m`.
    pub fn quantize(&self, x: f64) -> usize {
        let raw = ((x - self.min_value) / self.bin_width).floor();
        if raw.is_nan() || raw < 0.0 {
            1
        } else if raw >= self.num_states as f64 {
            self.num_states
        } else {
            raw as usize + 1
        }
    }
}

/// Quantizer spanning the observed range of `ts`.
pub fn build_quantizer(ts: &TimeSeries, num_states: usize) -> Result<Quantizer> {
    if ts.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: ts.len(),
        });
    }
    let (lo, hi) = ts.min_max();
    Quantizer::new(lo, hi, num_states)
}

/// Row-normalized transition histogram. Rows of states that were never
/// left are all zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    probs: SquareMatrix,
    counts: Option<Vec<u64>>,
}

impl TransitionMatrix {
    /// Wraps a given probability matrix. Every row must sum to 1 (within
    /// [`ROW_SUM_TOL`] scaled by the dimension) or be entirely zero.
    pub fn from_probs(probs: SquareMatrix) -> Result<Self> {
        for (i, row) in probs.rows().enumerate() {
            if row.iter().any(|&v| !(0.0..=1.0).contains(&v)) {
                return Err(Error::InvalidParameter(format!(
                    "row {} has entries outside [0, 1]",
                    i + 1
                )));
            }
            let s: f64 = row.iter().sum();
            if s != 0.0 && (s - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "row {} sums to {s}, expected 1 or 0",
                    i + 1
                )));
            }
        }
        Ok(Self {
            probs,
            counts: None,
        })
    }

    fn from_counts(m: usize, counts: Vec<u64>) -> Self {
        let mut probs = SquareMatrix::zeros(m);
        for i in 0..m {
            let row = &counts[i * m..(i + 1) * m];
            let total: u64 = row.iter().sum();
            if total > 0 {
                for (j, &c) in row.iter().enumerate() {
                    probs[(i, j)] = c as f64 / total as f64;
                }
            }
        }
        Self {
            probs,
            counts: Some(counts),
        }
    }

    pub fn num_states(&self) -> usize {
        self.probs.dim()
    }

    pub fn probs(&self) -> &SquareMatrix {
        &self.probs
    }

    /// Raw transition counts (row-major), when built from data.
    pub fn counts(&self) -> Option<&[u64]> {
        self.counts.as_deref()
    }

    pub fn count(&self, from: usize, to: usize) -> Option<u64> {
        let m = self.num_states();
        self.counts.as_ref().map(|c| c[(from - 1) * m + (to - 1)])
    }

    /// Probability of moving from state `from` to state `to` (1-based).
    pub fn prob(&self, from: usize, to: usize) -> f64 {
        self.probs[(from - 1, to - 1)]
    }

    /// 0-based indices of all-zero rows.
    pub fn zero_rows(&self) -> Vec<usize> {
        self.probs
            .rows()
            .enumerate()
            .filter(|(_, r)| r.iter().all(|&v| v == 0.0))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_stochastic(&self) -> bool {
        self.probs
            .rows()
            .all(|r| (r.iter().sum::<f64>() - 1.0).abs() <= ROW_SUM_TOL)
    }

    /// `m` rows of `m` probabilities, header `s1..sm`.
    pub fn to_csv(&self) -> String {
        let m = self.num_states();
        let mut s = (1..=m)
            .map(|i| format!("s{i}"))
            .collect::<Vec<_>>()
            .join(",");
        s.push('\n');
        for row in self.probs.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    /// Parses the output of [`TransitionMatrix::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (k, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let row: Result<Vec<f64>> = line
                .split(',')
                .map(|c| {
                    c.trim().parse::<f64>().map_err(|_| Error::Parse {
                        row: k + 1,
                        message: format!("cannot parse {c:?}"),
                    })
                })
                .collect();
            rows.push(row?);
        }
        Self::from_probs(SquareMatrix::from_rows(&rows)?)
    }
}

/// Empirical chain of `ts` with a quantizer spanning its own range.
pub fn build_transition_matrix(ts: &TimeSeries, num_states: usize) -> Result<TransitionMatrix> {
    let q = build_quantizer(ts, num_states)?;
    build_transition_matrix_with(ts, &q)
}

/// Empirical chain of `ts` under a given quantizer; values outside the
/// quantizer range clamp into the end bins.
pub fn build_transition_matrix_with(ts: &TimeSeries, q: &Quantizer) -> Result<TransitionMatrix> {
    if ts.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: ts.len(),
        });
    }
    let m = q.num_states();
    let mut counts = vec![0u64; m * m];
    let mut prev = q.quantize(ts.samples()[0]) - 1;
    for &x in &ts.samples()[1..] {
        let cur = q.quantize(x) - 1;
        counts[prev * m + cur] += 1;
        prev = cur;
    }
    Ok(TransitionMatrix::from_counts(m, counts))
}

/// Samples a path of `num_steps` transitions by inverse CDF over the current
/// row, scanning states in ascending order. The returned sequence has
/// `num_steps + 1` states and starts with `initial_state`.
///
/// The generator is ChaCha8 seeded from `seed`, so paths are reproducible
/// across platforms.
pub fn simulate_path(
    tm: &TransitionMatrix,
    initial_state: usize,
    num_steps: usize,
    seed: u64,
) -> Result<Vec<usize>> {
    let m = tm.num_states();
    if initial_state == 0 || initial_state > m {
        return Err(Error::InvalidParameter(format!(
            "initial state {initial_state} outside 1..={m}"
        )));
    }
    // Cumulative rows; None for rows that are not stochastic.
    let cdf: Vec<Option<Vec<f64>>> = tm
        .probs()
        .rows()
        .map(|r| {
            let s: f64 = r.iter().sum();
            if (s - 1.0).abs() > 1e-9 {
                return None;
            }
            let mut acc = 0.0;
            Some(
                r.iter()
                    .map(|v| {
                        acc += v;
                        acc
                    })
                    .collect(),
            )
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut path = Vec::with_capacity(num_steps + 1);
    let mut state = initial_state - 1;
    path.push(initial_state);
    for step in 0..num_steps {
        let row_cdf = cdf[state].as_ref().ok_or(Error::ZeroRow {
            state: state + 1,
            step,
        })?;
        let u: f64 = rng.random();
        let row = tm.probs().row(state);
        state = match row_cdf.iter().position(|&c| u < c) {
            Some(j) => j,
            // Rounding left the cumulative sum just under 1.
            None => row.iter().rposition(|&v| v > 0.0).expect("stochastic row"),
        };
        path.push(state + 1);
    }
    Ok(path)
}

/// Fraction of strictly positive entries.
pub fn density(tm: &TransitionMatrix) -> f64 {
    let m = tm.num_states();
    let nonzero = tm.probs().as_slice().iter().filter(|&&v| v > 0.0).count();
    nonzero as f64 / (m * m) as f64
}

/// Total diagonal mass (trace).
pub fn self_transition_probability(tm: &TransitionMatrix) -> f64 {
    tm.probs().trace()
}

/// Gershgorin disks of the transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GershgorinBound {
    pub centers: Vec<f64>,
    pub radii: Vec<f64>,
    /// min over rows of center - radius
    pub lower: f64,
    /// max over rows of center + radius
    pub upper: f64,
}

impl GershgorinBound {
    /// True when `z` lies in the union of disks, with absolute slack `tol`.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.centers
            .iter()
            .zip(&self.radii)
            .any(|(&c, &r)| (z - Complex64::new(c, 0.0)).norm() <= r + tol)
    }
}

pub fn gershgorin(tm: &TransitionMatrix) -> GershgorinBound {
    gershgorin_of(tm.probs())
}

/// Gershgorin disks of an arbitrary square matrix.
pub fn gershgorin_of(a: &SquareMatrix) -> GershgorinBound {
    let n = a.dim();
    let centers: Vec<f64> = (0..n).map(|k| a[(k, k)]).collect();
    let radii: Vec<f64> = (0..n)
        .map(|k| (0..n).filter(|&j| j != k).map(|j| a[(k, j)].abs()).sum())
        .collect();
    let lower = centers
        .iter()
        .zip(&radii)
        .map(|(c, r)| c - r)
        .fold(f64::INFINITY, f64::min);
    let upper = centers
        .iter()
        .zip(&radii)
        .map(|(c, r)| c + r)
        .fold(f64::NEG_INFINITY, f64::max);
    GershgorinBound {
        centers,
        radii,
        lower,
        upper,
    }
}
