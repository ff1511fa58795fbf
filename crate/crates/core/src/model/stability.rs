//! Stability of the linearized dynamics.
//!
//! [`stability_margin`] is the largest real part over the drift spectrum.
//! [`routh_hurwitz_stable`] reaches the same verdict without eigenvalues: it
//! forms the characteristic polynomial and checks the Hurwitz determinant
//! chain. Near the stability boundary those determinants are tiny differences
//! of O(1) products (products of pairwise eigenvalue sums such as
//! `λ + λ̄ = -γ_m`), far below what `f64` coefficients resolve, so the test
//! runs in exact integer arithmetic on the binary expansion of the entries.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::ModelError;
use crate::linalg::{eigenvalues, LinalgError, Matrix};

/// `max Re λ(A)`; negative iff the stationary state exists.
pub fn stability_margin(a: &Matrix) -> Result<f64, ModelError> {
    Ok(eigenvalues(a)?.max_real())
}

/// Splits a finite `f64` into `(mantissa, exponent)` with `x = m · 2^e`.
fn decompose(x: f64) -> (i64, i32) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exp_field = ((bits >> 52) & 0x7ff) as i32;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (m, e) = if exp_field == 0 {
        (frac, -1074)
    } else {
        (frac | (1i64 << 52), exp_field - 1075)
    };
    let tz = m.trailing_zeros() as i32;
    (sign * (m >> tz), e + tz)
}

/// Integer matrix `N` and exponent `s` with `A = 2^s N` exactly.
fn integer_scaled(a: &Matrix) -> (Vec<Vec<BigInt>>, i32) {
    let n = a.rows();
    let parts: Vec<(i64, i32)> = a.as_slice().iter().map(|&x| decompose(x)).collect();
    let shift = parts
        .iter()
        .filter(|(m, _)| *m != 0)
        .map(|&(_, e)| e)
        .min()
        .unwrap_or(0);
    let mut out = vec![vec![BigInt::from(0); n]; n];
    for (idx, &(m, e)) in parts.iter().enumerate() {
        if m != 0 {
            out[idx / n][idx % n] = BigInt::from(m) << ((e - shift) as usize);
        }
    }
    (out, shift)
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::from(0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == BigInt::from(0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Characteristic polynomial `det(λI - N)` of the integer-scaled matrix,
/// coefficients from highest degree (`1`) down, by Faddeev–LeVerrier. The
/// divisions by `k` are exact for integer input. Returns the scale exponent
/// `s` with `A = 2^s N`, so the roots of `A` are `2^s` times these roots.
pub fn characteristic_polynomial_exact(a: &Matrix) -> Result<(Vec<BigInt>, i32), ModelError> {
    if !a.is_square() || a.rows() == 0 {
        return Err(LinalgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        }
        .into());
    }
    if !a.is_finite() {
        return Err(LinalgError::NonFinite.into());
    }
    let n = a.rows();
    let (m, shift) = integer_scaled(a);
    let zero = BigInt::from(0);
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigInt::from(1));
    // M_k = N M_{k-1} + c_{k-1} I, c_k = -tr(N M_k) / k
    let mut mk = vec![vec![zero.clone(); n]; n];
    for k in 1..=n {
        let mut next = mat_mul(&m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[k - 1];
        }
        mk = next;
        let prod = mat_mul(&m, &mk);
        let trace: BigInt = (0..n).map(|i| prod[i][i].clone()).sum();
        coeffs.push(-trace / BigInt::from(k as u64));
    }
    Ok((coeffs, shift))
}

/// Determinant by fraction-free Bareiss elimination with row pivoting.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let zero = BigInt::from(0);
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for p in 0..n {
        if m[p][p] == zero {
            match (p + 1..n).find(|&r| m[r][p] != zero) {
                Some(r) => {
                    m.swap(p, r);
                    negate = !negate;
                }
                None => return zero,
            }
        }
        for i in (p + 1)..n {
            for j in (p + 1)..n {
                let v = (&m[i][j] * &m[p][p] - &m[i][p] * &m[p][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[p][p].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Leading principal minors `Δ₁ … Δ_n` of the Hurwitz matrix of a monic
/// polynomial given from highest degree down.
pub(crate) fn hurwitz_minors(coeffs: &[BigInt]) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let zero = BigInt::from(0);
    let coef = |k: isize| -> BigInt {
        if k < 0 || k as usize > n {
            zero.clone()
        } else {
            coeffs[k as usize].clone()
        }
    };
    let h: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| coef(2 * j as isize - i as isize + 1))
                .collect()
        })
        .collect();
    (1..=n)
        .map(|k| bareiss_det(h[..k].iter().map(|row| row[..k].to_vec()).collect()))
        .collect()
}

/// Routh–Hurwitz test: every leading principal minor of the Hurwitz matrix of
/// `det(λI - A)` is positive.
pub fn routh_hurwitz_stable(a: &Matrix) -> Result<bool, ModelError> {
    let (coeffs, _) = characteristic_polynomial_exact(a)?;
    let zero = BigInt::from(0);
    Ok(hurwitz_minors(&coeffs).iter().all(|d| *d > zero))
}
