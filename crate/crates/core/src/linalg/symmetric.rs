use alloc::vec::Vec;

use super::{require_square, LinalgError, Matrix};
use crate::math;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotation, ascending.
pub fn symmetric_eigenvalues(m: &Matrix) -> Result<Vec<f64>, LinalgError> {
    let n = require_square(m)?;
    let asym = m.asymmetry();
    if asym > 1e-12 * (1.0 + m.max_abs()) {
        return Err(LinalgError::NotSymmetric { asymmetry: asym });
    }
    let mut a = m.symmetrized();
    let scale = a.frobenius_norm();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if math::sqrt(off) <= 1e-15 * scale || off == 0.0 {
            let mut ev: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
            ev.sort_by(f64::total_cmp);
            return Ok(ev);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + math::sqrt(theta * theta + 1.0));
                let c = 1.0 / math::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    Err(LinalgError::NoConvergence {
        iterations: MAX_SWEEPS,
    })
}

/// Smallest eigenvalue of the Hermitian matrix `re + i·im`, through the real
/// symmetric embedding `[[re, -im], [im, re]]` (each eigenvalue appears twice).
pub fn hermitian_min_eigenvalue(re: &Matrix, im: &Matrix) -> Result<f64, LinalgError> {
    let n = require_square(re)?;
    if im.rows() != n || im.cols() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: (n, n),
            found: (im.rows(), im.cols()),
        });
    }
    let mut big = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            big[(i, j)] = re[(i, j)];
            big[(i + n, j + n)] = re[(i, j)];
            big[(i, j + n)] = -im[(i, j)];
            big[(i + n, j)] = im[(i, j)];
        }
    }
    Ok(symmetric_eigenvalues(&big)?[0])
}
