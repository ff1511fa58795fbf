//! Real Schur decomposition `A = Q T Qᵀ` by Householder reduction to upper
//! Hessenberg form followed by Francis double-shift QR iteration.
//!
//! `T` is returned in standardized quasi-triangular form: entries below the
//! first subdiagonal are exactly zero, and a subdiagonal entry is nonzero only
//! inside a 2x2 block carrying a complex-conjugate eigenvalue pair. Blocks with
//! real eigenvalues are rotated to triangular form before being accepted.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::{require_square, LinalgError, Matrix, Spectrum};
use crate::math;

/// Subdiagonal entries below this fraction of `‖A‖_F` are set to zero.
pub const DEFLATION_TOL: f64 = 1e-14;

/// Iterations allowed per unit of dimension.
const ITERATIONS_PER_DIM: usize = 100;

#[derive(Debug, Clone)]
pub struct RealSchur {
    /// Orthogonal Schur vectors.
    pub q: Matrix,
    /// Quasi-upper-triangular factor.
    pub t: Matrix,
}

impl RealSchur {
    /// Sizes of the diagonal blocks of `t`, top to bottom (each 1 or 2).
    pub fn blocks(&self) -> Vec<usize> {
        let n = self.t.rows();
        let mut sizes = Vec::new();
        let mut i = 0;
        while i < n {
            if i + 1 < n && self.t[(i + 1, i)] != 0.0 {
                sizes.push(2);
                i += 2;
            } else {
                sizes.push(1);
                i += 1;
            }
        }
        sizes
    }

    pub fn eigenvalues(&self) -> Spectrum {
        let t = &self.t;
        let mut values = Vec::with_capacity(t.rows());
        let mut i = 0;
        for size in self.blocks() {
            if size == 1 {
                values.push(Complex64::new(t[(i, i)], 0.0));
            } else {
                let (a, b, c, d) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
                let mid = 0.5 * (a + d);
                let half = 0.5 * (a - d);
                let im = math::sqrt((-(half * half + b * c)).max(0.0));
                values.push(Complex64::new(mid, im));
                values.push(Complex64::new(mid, -im));
            }
            i += size;
        }
        Spectrum::new(values)
    }
}

/// All eigenvalues of a real square matrix.
pub fn eigenvalues(m: &Matrix) -> Result<Spectrum, LinalgError> {
    Ok(real_schur(m)?.eigenvalues())
}

pub fn real_schur(a: &Matrix) -> Result<RealSchur, LinalgError> {
    let n = require_square(a)?;
    let mut h = a.clone();
    let mut q = Matrix::identity(n);
    hessenberg(&mut h, &mut q);

    let tol = DEFLATION_TOL * a.frobenius_norm();
    let cap = ITERATIONS_PER_DIM * n;
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    // `hi` is one past the last row of the active window.
    let mut hi = n;

    while hi > 0 {
        let last = hi - 1;
        let mut l = last;
        while l > 0 {
            if h[(l, l - 1)].abs() <= tol {
                h[(l, l - 1)] = 0.0;
                break;
            }
            l -= 1;
        }

        if l == last {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        if l + 1 == last {
            standardize_block(&mut h, &mut q, l);
            hi -= 2;
            since_deflation = 0;
            continue;
        }

        total += 1;
        since_deflation += 1;
        if total > cap {
            return Err(LinalgError::NoConvergence { iterations: total });
        }
        let exceptional = since_deflation.is_multiple_of(10);
        francis_step(&mut h, &mut q, l, last, exceptional);
    }

    Ok(RealSchur { q, t: h })
}

/// Householder reduction to upper Hessenberg form, accumulating into `q`.
fn hessenberg(h: &mut Matrix, q: &mut Matrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let mut v = Vec::with_capacity(n);
    for k in 0..n - 2 {
        v.clear();
        v.extend((k + 1..n).map(|i| h[(i, k)]));
        let tail: f64 = v[1..].iter().map(|x| x * x).sum();
        if tail == 0.0 {
            continue;
        }
        let norm = math::sqrt(v[0] * v[0] + tail);
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let beta = 2.0 / v.iter().map(|x| x * x).sum::<f64>();

        reflect_rows(h, k + 1, &v, beta, k, n);
        reflect_cols(h, k + 1, &v, beta, 0, n);
        reflect_cols(q, k + 1, &v, beta, 0, n);

        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = 0.0;
        }
    }
}

/// `M ← (I - β v vᵀ) M` on rows `r0..r0+len(v)`, columns `c0..c1`.
fn reflect_rows(m: &mut Matrix, r0: usize, v: &[f64], beta: f64, c0: usize, c1: usize) {
    for j in c0..c1 {
        let s: f64 = v.iter().enumerate().map(|(i, vi)| vi * m[(r0 + i, j)]).sum();
        let s = beta * s;
        for (i, vi) in v.iter().enumerate() {
            m[(r0 + i, j)] -= s * vi;
        }
    }
}

/// `M ← M (I - β v vᵀ)` on columns `c0..c0+len(v)`, rows `r0..r1`.
fn reflect_cols(m: &mut Matrix, c0: usize, v: &[f64], beta: f64, r0: usize, r1: usize) {
    for i in r0..r1 {
        let s: f64 = v.iter().enumerate().map(|(j, vj)| vj * m[(i, c0 + j)]).sum();
        let s = beta * s;
        for (j, vj) in v.iter().enumerate() {
            m[(i, c0 + j)] -= s * vj;
        }
    }
}

/// Applies the plane rotation `G = [[c, -s], [s, c]]` as `Gᵀ M` on rows `p, p+1`
/// (columns `c0..`) and `M G` on columns `p, p+1` (rows `..r1`).
fn rotate(h: &mut Matrix, q: &mut Matrix, p: usize, c: f64, s: f64, c0: usize, r1: usize) {
    let n = h.rows();
    for j in c0..n {
        let (a, b) = (h[(p, j)], h[(p + 1, j)]);
        h[(p, j)] = c * a + s * b;
        h[(p + 1, j)] = -s * a + c * b;
    }
    for i in 0..r1 {
        let (a, b) = (h[(i, p)], h[(i, p + 1)]);
        h[(i, p)] = c * a + s * b;
        h[(i, p + 1)] = -s * a + c * b;
    }
    for i in 0..n {
        let (a, b) = (q[(i, p)], q[(i, p + 1)]);
        q[(i, p)] = c * a + s * b;
        q[(i, p + 1)] = -s * a + c * b;
    }
}

/// Accepts the 2x2 block at rows/cols `p, p+1`. A block with real eigenvalues is
/// rotated so that its subdiagonal vanishes; a complex block is left as is.
fn standardize_block(h: &mut Matrix, q: &mut Matrix, p: usize) {
    let (a, b, c, d) = (h[(p, p)], h[(p, p + 1)], h[(p + 1, p)], h[(p + 1, p + 1)]);
    if c == 0.0 {
        return;
    }
    let half = 0.5 * (a - d);
    let disc = half * half + b * c;
    if disc < 0.0 {
        return;
    }
    // Eigenvector (λ - d, c) with the root chosen to avoid cancellation.
    let root = math::sqrt(disc);
    let x = if half >= 0.0 { half + root } else { half - root };
    let r = math::hypot(x, c);
    if r == 0.0 {
        return;
    }
    let n = h.rows();
    rotate(h, q, p, x / r, c / r, p, (p + 2).min(n));
    h[(p + 1, p)] = 0.0;
}

/// One implicit double-shift QR sweep on the active window `l..=m`.
fn francis_step(h: &mut Matrix, q: &mut Matrix, l: usize, m: usize, exceptional: bool) {
    let n = h.rows();
    let (s, t) = if exceptional {
        let e = h[(m, m - 1)].abs() + h[(m - 1, m - 2)].abs();
        let d = 0.75 * e + h[(m, m)];
        (2.0 * d, d * d + 0.4375 * e * e)
    } else {
        let (a, b) = (h[(m - 1, m - 1)], h[(m - 1, m)]);
        let (c, d) = (h[(m, m - 1)], h[(m, m)]);
        (a + d, a * d - b * c)
    };

    let mut x = h[(l, l)] * h[(l, l)] + h[(l, l + 1)] * h[(l + 1, l)] - s * h[(l, l)] + t;
    let mut y = h[(l + 1, l)] * (h[(l, l)] + h[(l + 1, l + 1)] - s);
    let mut z = h[(l + 1, l)] * h[(l + 2, l + 1)];

    for k in l..=(m - 2) {
        let norm = math::sqrt(x * x + y * y + z * z);
        if norm != 0.0 {
            let alpha = if x >= 0.0 { -norm } else { norm };
            let v = [x - alpha, y, z];
            let beta = 2.0 / (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            let c0 = if k > l { k - 1 } else { l };
            reflect_rows(h, k, &v, beta, c0, n);
            reflect_cols(h, k, &v, beta, 0, (k + 4).min(m + 1));
            reflect_cols(q, k, &v, beta, 0, n);
            if k > l {
                h[(k, k - 1)] = alpha;
                h[(k + 1, k - 1)] = 0.0;
                h[(k + 2, k - 1)] = 0.0;
            }
        }
        x = h[(k + 1, k)];
        y = h[(k + 2, k)];
        if k + 3 <= m {
            z = h[(k + 3, k)];
        }
    }

    let r = math::hypot(x, y);
    if r != 0.0 {
        rotate(h, q, m - 1, x / r, y / r, m - 2, m + 1);
        h[(m - 1, m - 2)] = r;
        h[(m, m - 2)] = 0.0;
    }
}
