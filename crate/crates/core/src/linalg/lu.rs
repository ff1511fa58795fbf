use alloc::vec::Vec;

use super::{require_square, LinalgError, Matrix};

/// Largest accepted 1-norm condition estimate, `1e-3 / ε`.
const MAX_CONDITION: f64 = 1e-3 / f64::EPSILON;

/// LU factorization with partial pivoting, `P M = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    factors: Matrix,
    perm: Vec<usize>,
    min_pivot: f64,
}

impl Lu {
    pub fn new(m: &Matrix) -> Result<Self, LinalgError> {
        let n = require_square(m)?;
        let mut a = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = m.max_abs();
        let mut min_pivot = f64::INFINITY;

        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, a[(i, k)].abs()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            min_pivot = min_pivot.min(pmax);
            if pmax == 0.0 || pmax <= (n as f64) * f64::EPSILON * scale {
                return Err(LinalgError::Singular { pivot: pmax });
            }
            a.swap_rows(k, p);
            perm.swap(k, p);
            let pivot = a[(k, k)];
            for i in (k + 1)..n {
                let f = a[(i, k)] / pivot;
                a[(i, k)] = f;
                if f != 0.0 {
                    for j in (k + 1)..n {
                        a[(i, j)] -= f * a[(k, j)];
                    }
                }
            }
        }
        Ok(Self {
            factors: a,
            perm,
            min_pivot,
        })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Smallest pivot magnitude met during elimination.
    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(b.len(), n, "right-hand side length mismatch");
        let a = &self.factors;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= a[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= a[(i, j)] * x[j];
            }
            x[i] = s / a[(i, i)];
        }
        x
    }

    /// `‖M⁻¹‖₁`, from the explicit inverse.
    fn inverse_norm1(&self) -> f64 {
        let n = self.dim();
        let mut e = alloc::vec![0.0; n];
        let mut colsum = Vec::with_capacity(n);
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[j] = 1.0;
            colsum.push(self.solve(&e).iter().map(|x| x.abs()).sum::<f64>());
        }
        colsum.into_iter().fold(0.0, f64::max)
    }
}

fn norm1(m: &Matrix) -> f64 {
    (0..m.cols())
        .map(|j| (0..m.rows()).map(|i| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Solves `M x = b` by partial-pivoting LU.
///
/// Rejects matrices whose 1-norm condition number exceeds `1e-3/ε`, reporting
/// the smallest pivot encountered.
pub fn solve_linear(m: &Matrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    let n = require_square(m)?;
    if b.len() != n {
        return Err(LinalgError::DimensionMismatch {
            expected: (n, 1),
            found: (b.len(), 1),
        });
    }
    if b.iter().any(|x| !x.is_finite()) {
        return Err(LinalgError::NonFinite);
    }
    let lu = Lu::new(m)?;
    if norm1(m) * lu.inverse_norm1() > MAX_CONDITION {
        return Err(LinalgError::Singular {
            pivot: lu.min_pivot(),
        });
    }
    Ok(lu.solve(b))
}
