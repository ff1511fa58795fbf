//! Continuous Lyapunov equation `A C + C Aᵀ + D = 0`.
//!
//! [`solve_lyapunov`] is the Bartels–Stewart route: reduce `A` to real Schur
//! form `QᵀAQ = T`, solve the quasi-triangular equation `T Y + Y Tᵀ = -QᵀDQ`
//! one diagonal block of columns at a time from the right, and map back with
//! `C = Q Y Qᵀ`. [`solve_lyapunov_kronecker`] vectorizes the whole equation
//! into one dense `n²`-dimensional linear system and shares no code with the
//! Schur path beyond LU.

use alloc::vec::Vec;

use super::{real_schur, require_square, solve_linear, LinalgError, Matrix};

fn check_pair(a: &Matrix, d: &Matrix) -> Result<usize, LinalgError> {
    let n = require_square(a)?;
    if d.rows() != n || d.cols() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: (n, n),
            found: (d.rows(), d.cols()),
        });
    }
    if !d.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let asym = d.asymmetry();
    if asym > 1e-12 * (1.0 + d.max_abs()) {
        return Err(LinalgError::NotSymmetric { asymmetry: asym });
    }
    Ok(n)
}

/// Stationary covariance for drift `a` and diffusion `d`.
///
/// Fails with [`LinalgError::Unstable`] unless every eigenvalue of `a` has a
/// strictly negative real part. The result is symmetrized.
pub fn solve_lyapunov(a: &Matrix, d: &Matrix) -> Result<Matrix, LinalgError> {
    let n = check_pair(a, d)?;
    let schur = real_schur(a)?;
    let max_real = schur.eigenvalues().max_real();
    if max_real >= 0.0 {
        return Err(LinalgError::Unstable { max_real });
    }
    let (q, t) = (&schur.q, &schur.t);

    // F = -Qᵀ D Q
    let f = q.transpose().matmul(d).matmul(q).scale(-1.0);
    let mut y = Matrix::zeros(n, n);

    let blocks = schur.blocks();
    let mut starts = Vec::with_capacity(blocks.len());
    let mut acc = 0;
    for &b in &blocks {
        starts.push(acc);
        acc += b;
    }

    for (&j0, &size) in starts.iter().zip(&blocks).rev() {
        let solved = j0 + size;
        // R = F[:, block] - Σ_{k ≥ solved} Y[:, k] T[block, k]ᵀ
        let mut rhs = Vec::with_capacity(n * size);
        for jj in j0..solved {
            for i in 0..n {
                let mut r = f[(i, jj)];
                for k in solved..n {
                    r -= y[(i, k)] * t[(jj, k)];
                }
                rhs.push(r);
            }
        }

        // (I_size ⊗ T + T_bb ⊗ I_n) vec(Y_b) = vec(R)
        let m = n * size;
        let mut sys = Matrix::zeros(m, m);
        for b in 0..size {
            for i in 0..n {
                for k in 0..n {
                    sys[(b * n + i, b * n + k)] += t[(i, k)];
                }
            }
            for c in 0..size {
                let tbc = t[(j0 + b, j0 + c)];
                if tbc != 0.0 {
                    for i in 0..n {
                        sys[(b * n + i, c * n + i)] += tbc;
                    }
                }
            }
        }
        let sol = solve_linear(&sys, &rhs)?;
        for b in 0..size {
            for i in 0..n {
                y[(i, j0 + b)] = sol[b * n + i];
            }
        }
    }

    let c = q.matmul(&y).matmul(&q.transpose());
    if !c.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    Ok(c.symmetrized())
}

/// Kronecker-vectorized solve of `(I ⊗ A + A ⊗ I) vec(C) = -vec(D)`.
///
/// No stability check is made; a singular operator surfaces as
/// [`LinalgError::Singular`].
pub fn solve_lyapunov_kronecker(a: &Matrix, d: &Matrix) -> Result<Matrix, LinalgError> {
    let n = check_pair(a, d)?;
    let eye = Matrix::identity(n);
    let op = eye.kron(a).add(&a.kron(&eye));
    let rhs: Vec<f64> = d.vec_columns().into_iter().map(|x| -x).collect();
    let v = solve_linear(&op, &rhs)?;
    Ok(Matrix::from_vec_columns(n, n, &v).symmetrized())
}

/// `‖A C + C Aᵀ + D‖_F`.
pub fn lyapunov_residual(a: &Matrix, c: &Matrix, d: &Matrix) -> f64 {
    let ac = a.matmul(c);
    ac.add(&ac.transpose()).add(d).frobenius_norm()
}
