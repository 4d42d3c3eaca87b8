//! Spectra of transition matrices: the full eigenvalue list, the second
//! largest eigenvalue modulus (SLEM), the stationary distribution, and the
//! spectral norm used to compare two chains.

mod eigen;
mod symmetric;

use std::fmt::Write as _;

use num_complex::Complex64;

pub use eigen::{eigenvalues, EigenOptions};
pub use symmetric::{symmetric_eigen, symmetric_eigenvalues};

use crate::error::{Error, Result};
use crate::markov::{build_transition_matrix, TransitionMatrix};
use crate::matrix::SquareMatrix;
use crate::timeseries::TimeSeries;

/// Moduli closer than this are treated as tied when ordering.
const MODULUS_TIE: f64 = 1e-12;

/// Eigenvalues sorted by descending modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<Complex64>,
}

impl SpectralSummary {
    pub fn from_unsorted(mut values: Vec<Complex64>) -> Self {
        sort_by_modulus(&mut values);
        Self {
            eigenvalues: values,
        }
    }

    pub fn leading_value(&self) -> Complex64 {
        self.eigenvalues[0]
    }

    /// The eigenvalue in second position of the sorted list. For a chain
    /// whose top modulus is repeated (periodic or reducible) this is itself
    /// of modulus 1.
    pub fn slem_value(&self) -> Complex64 {
        self.eigenvalues[1]
    }

    pub fn slem_modulus(&self) -> f64 {
        self.slem_value().norm()
    }

    /// `re,im,modulus` rows with header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,modulus\n");
        for z in &self.eigenvalues {
            let _ = writeln!(s, "{:.17e},{:.17e},{:.17e}", z.re, z.im, z.norm());
        }
        s
    }
}

/// Descending modulus; near-equal moduli ordered by descending real part,
/// then descending imaginary part.
fn sort_by_modulus(values: &mut [Complex64]) {
    values.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end - 1].norm() - values[end].norm() <= MODULUS_TIE {
            end += 1;
        }
        values[start..end].sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
        start = end;
    }
}

pub fn eigen_decompose(matrix: &SquareMatrix) -> Result<SpectralSummary> {
    eigen_decompose_with(matrix, &EigenOptions::default())
}

pub fn eigen_decompose_with(matrix: &SquareMatrix, opts: &EigenOptions) -> Result<SpectralSummary> {
    if matrix.dim() < 2 {
        return Err(Error::InvalidParameter(
            "eigen decomposition needs at least a 2x2 matrix".into(),
        ));
    }
    Ok(SpectralSummary::from_unsorted(eigenvalues(matrix, opts)?))
}

/// SLEM of the chain built from `ts` with `num_states` equal-width states.
pub fn slem_of_series(ts: &TimeSeries, num_states: usize) -> Result<f64> {
    let tm = build_transition_matrix(ts, num_states)?;
    Ok(eigen_decompose(tm.probs())?.slem_modulus())
}

#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDistribution {
    pub probs: Vec<f64>,
    /// max-norm of `pi P - pi`
    pub residual: f64,
}

/// Normalized left eigenvector for eigenvalue 1.
pub fn stationary_distribution(tm: &TransitionMatrix) -> Result<StationaryDistribution> {
    let p = tm.probs();
    let n = p.dim();
    if let Some(state) = tm.zero_rows().first() {
        return Err(Error::ZeroRow {
            state: state + 1,
            step: 0,
        });
    }
    let spec = eigen_decompose(p)?;
    if (spec.leading_value() - Complex64::new(1.0, 0.0)).norm() > 1e-6 {
        return Err(Error::InvalidParameter(format!(
            "leading eigenvalue {} is not 1",
            spec.leading_value()
        )));
    }
    let multiplicity = spec
        .eigenvalues
        .iter()
        .filter(|z| (*z - Complex64::new(1.0, 0.0)).norm() < 1e-8)
        .count();
    if multiplicity > 1 {
        return Err(Error::Reducible { multiplicity });
    }

    // Solve (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    let mut a = vec![vec![0.0; n + 1]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for j in 0..n {
            row[j] = p[(j, i)] - if i == j { 1.0 } else { 0.0 };
        }
    }
    a[n - 1].fill(1.0);
    let pi = solve_augmented(a).ok_or(Error::Reducible { multiplicity: 2 })?;

    let mut residual: f64 = 0.0;
    for j in 0..n {
        let v: f64 = (0..n).map(|i| pi[i] * p[(i, j)]).sum();
        residual = residual.max((v - pi[j]).abs());
    }
    Ok(StationaryDistribution {
        probs: pi,
        residual,
    })
}

/// Gaussian elimination with partial pivoting on an n x (n+1) system.
fn solve_augmented(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-14 {
            return None;
        }
        a.swap(col, piv);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = row[col] / pivot_row[col];
            if f != 0.0 {
                for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= f * p;
                }
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (a[i][n] - s) / a[i][i];
    }
    Some(x)
}

/// Spectral norm: square root of the largest eigenvalue of `A^T A`.
pub fn matrix_two_norm(a: &SquareMatrix) -> f64 {
    let ata = a.transpose().matmul(a);
    symmetric_eigenvalues(&ata)
        .into_iter()
        .fold(0.0f64, f64::max)
        .sqrt()
}
