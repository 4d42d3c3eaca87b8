//! Dense nonsymmetric eigenvalues: balancing, Householder reduction to upper
//! Hessenberg form, then Francis double-shift QR with deflation.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// Total QR sweeps allowed, as a multiple of the dimension.
    pub sweeps_per_dim: usize,
    /// Relative threshold for treating a subdiagonal entry as zero.
    pub deflation_tol: f64,
    pub balance: bool,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            sweeps_per_dim: 100,
            deflation_tol: 1e-12,
            balance: true,
        }
    }
}

/// All eigenvalues of `a`, unordered.
pub fn eigenvalues(a: &SquareMatrix, opts: &EigenOptions) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    if !a.is_finite() {
        return Err(Error::InvalidParameter(
            "matrix has non-finite entries".into(),
        ));
    }
    let mut h = a.clone();
    if opts.balance {
        balance(&mut h);
    }
    reduce_to_hessenberg(&mut h);
    hessenberg_qr(&mut h, opts)
}

/// Parlett-Reinsch diagonal similarity scaling by powers of two, so row and
/// column norms become comparable. Exact in floating point.
fn balance(a: &mut SquareMatrix) {
    const RADIX: f64 = 2.0;
    const SQRDX: f64 = RADIX * RADIX;
    let n = a.dim();
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= SQRDX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= SQRDX;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// Orthogonal similarity reduction to upper Hessenberg form.
fn reduce_to_hessenberg(h: &mut SquareMatrix) {
    let n = h.dim();
    if n < 3 {
        return;
    }
    let high = n - 1;
    let mut ort = vec![0.0; n];
    for m in 1..high {
        let scale: f64 = (m..=high).map(|i| h[(i, m - 1)].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut hh = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            hh += ort[i] * ort[i];
        }
        let mut g = hh.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        hh -= ort[m] * g;
        ort[m] -= g;

        // H <- (I - u u^T / hh) H
        for j in m..n {
            let f: f64 = (m..=high).rev().map(|i| ort[i] * h[(i, j)]).sum::<f64>() / hh;
            for i in m..=high {
                h[(i, j)] -= f * ort[i];
            }
        }
        // H <- H (I - u u^T / hh)
        for i in 0..=high {
            let f: f64 = (m..=high).rev().map(|j| ort[j] * h[(i, j)]).sum::<f64>() / hh;
            for j in m..=high {
                h[(i, j)] -= f * ort[j];
            }
        }
        h[(m, m - 1)] = scale * g;
        for i in m + 1..=high {
            h[(i, m - 1)] = 0.0;
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Eigenvalues of an upper Hessenberg matrix, destroying it.
fn hessenberg_qr(a: &mut SquareMatrix, opts: &EigenOptions) -> Result<Vec<Complex64>> {
    let n = a.dim();
    let cap = opts.sweeps_per_dim.saturating_mul(n).max(1);
    let tol = opts.deflation_tol;
    let mut w = vec![Complex64::new(0.0, 0.0); n];

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }

    let mut total_sweeps = 0usize;
    let mut its = 0usize;
    let mut shift_acc = 0.0;
    let mut nn = n as isize - 1;

    while nn >= 0 {
        let nu = nn as usize;
        // Look for a negligible subdiagonal element.
        let mut l = nu;
        while l > 0 {
            let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
            if s == 0.0 {
                s = anorm;
            }
            if a[(l, l - 1)].abs() <= tol * s {
                a[(l, l - 1)] = 0.0;
                break;
            }
            l -= 1;
        }

        let mut x = a[(nu, nu)];
        if l == nu {
            w[nu] = Complex64::new(x + shift_acc, 0.0);
            nn -= 1;
            its = 0;
            continue;
        }
        let mut y = a[(nu - 1, nu - 1)];
        let mut ww = a[(nu, nu - 1)] * a[(nu - 1, nu)];
        if l == nu - 1 {
            let p = 0.5 * (y - x);
            let q = p * p + ww;
            let z = q.abs().sqrt();
            x += shift_acc;
            if q >= 0.0 {
                let z = p + sign(z, p);
                w[nu - 1] = Complex64::new(x + z, 0.0);
                w[nu] = Complex64::new(if z != 0.0 { x - ww / z } else { x + z }, 0.0);
            } else {
                w[nu] = Complex64::new(x + p, -z);
                w[nu - 1] = Complex64::new(x + p, z);
            }
            nn -= 2;
            its = 0;
            continue;
        }

        if total_sweeps >= cap {
            return Err(Error::NoConvergence { iterations: cap });
        }
        if its > 0 && its.is_multiple_of(10) {
            // Exceptional shift.
            shift_acc += x;
            for i in 0..=nu {
                a[(i, i)] -= x;
            }
            let s = a[(nu, nu - 1)].abs() + a[(nu - 1, nu - 2)].abs();
            x = 0.75 * s;
            y = x;
            ww = -0.4375 * s * s;
        }
        its += 1;
        total_sweeps += 1;

        // Find two consecutive small subdiagonal elements.
        let mut m = nu - 2;
        let (mut p, mut q, mut r);
        loop {
            let z = a[(m, m)];
            let rr = x - z;
            let ss = y - z;
            p = (rr * ss - ww) / a[(m + 1, m)] + a[(m, m + 1)];
            q = a[(m + 1, m + 1)] - z - rr - ss;
            r = a[(m + 2, m + 1)];
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
            let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
            if u <= f64::EPSILON * v {
                break;
            }
            m -= 1;
        }
        for i in m..nu - 1 {
            a[(i + 2, i)] = 0.0;
            if i != m {
                a[(i + 2, i - 1)] = 0.0;
            }
        }

        // Double-shift QR sweep on rows/columns l..=nu.
        for k in m..nu {
            let mut xk = 0.0;
            if k != m {
                p = a[(k, k - 1)];
                q = a[(k + 1, k - 1)];
                r = if k + 1 != nu { a[(k + 2, k - 1)] } else { 0.0 };
                xk = p.abs() + q.abs() + r.abs();
                if xk != 0.0 {
                    p /= xk;
                    q /= xk;
                    r /= xk;
                }
            }
            let s = sign((p * p + q * q + r * r).sqrt(), p);
            if s == 0.0 {
                continue;
            }
            if k == m {
                if l != m {
                    a[(k, k - 1)] = -a[(k, k - 1)];
                }
            } else {
                a[(k, k - 1)] = -s * xk;
            }
            p += s;
            let hx = p / s;
            let hy = q / s;
            let hz = r / s;
            q /= p;
            r /= p;
            for j in k..=nu {
                let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                if k + 1 != nu {
                    pp += r * a[(k + 2, j)];
                    a[(k + 2, j)] -= pp * hz;
                }
                a[(k + 1, j)] -= pp * hy;
                a[(k, j)] -= pp * hx;
            }
            let mmin = if nu < k + 3 { nu } else { k + 3 };
            for i in l..=mmin {
                let mut pp = hx * a[(i, k)] + hy * a[(i, k + 1)];
                if k + 1 != nu {
                    pp += hz * a[(i, k + 2)];
                    a[(i, k + 2)] -= pp * r;
                }
                a[(i, k + 1)] -= pp * q;
                a[(i, k)] -= pp;
            }
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eig(rows: &[&[f64]]) -> Vec<Complex64> {
        let m = SquareMatrix::from_rows(rows).unwrap();
        let mut e = eigenvalues(&m, &EigenOptions::default()).unwrap();
        e.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
        e
    }

    #[test]
    fn triangular_and_rotation() {
        let e = eig(&[&[2.0, 1.0, 0.0], &[0.0, 3.0, 4.0], &[0.0, 0.0, -1.0]]);
        let re: Vec<f64> = e.iter().map(|z| z.re).collect();
        assert!(
            (re[0] - 3.0).abs() < 1e-12
                && (re[1] - 2.0).abs() < 1e-12
                && (re[2] + 1.0).abs() < 1e-12
        );
        let e = eig(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert!((e[0].im - 1.0).abs() < 1e-12 && (e[1].im + 1.0).abs() < 1e-12);
    }

    #[test]
    fn companion_of_known_polynomial() {
        // roots 1, 2, 3, 4: x^4 - 10x^3 + 35x^2 - 50x + 24
        let e = eig(&[
            &[10.0, -35.0, 50.0, -24.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]);
        for (z, want) in e.iter().zip([4.0, 3.0, 2.0, 1.0]) {
            assert!((z.re - want).abs() < 1e-9, "{z} vs {want}");
            assert!(z.im.abs() < 1e-9);
        }
    }

    #[test]
    fn cyclic_permutation_roots_of_unity() {
        let n = 7;
        let mut m = SquareMatrix::zeros(n);
        for i in 0..n {
            m[(i, (i + 1) % n)] = 1.0;
        }
        let e = eigenvalues(&m, &EigenOptions::default()).unwrap();
        for z in &e {
            assert!((z.norm() - 1.0).abs() < 1e-10);
            assert!((z.powu(7) - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn nonconvergence_reported() {
        let m =
            SquareMatrix::from_rows(&[[0.2, 0.5, 0.3], [0.1, 0.6, 0.3], [0.4, 0.4, 0.2]]).unwrap();
        let opts = EigenOptions {
            sweeps_per_dim: 0,
            deflation_tol: 0.0,
            balance: false,
        };
        assert!(matches!(
            eigenvalues(&m, &opts),
            Err(Error::NoConvergence { .. })
        ));
    }
}
