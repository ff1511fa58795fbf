mod common;

use common::{random_matrix, random_psd, random_stable, rng, working_point};
use cvsteady_core::linalg::{
    eigenvalues, lyapunov_residual, solve_linear, solve_lyapunov, solve_lyapunov_kronecker,
};
use cvsteady_core::model::{build_diffusion, build_drift};
use cvsteady_core::Matrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;

/// `det(λI - A)` by complex Gaussian elimination with partial pivoting.
fn char_poly_at(a: &Matrix, z: Complex64) -> Complex64 {
    let n = a.rows();
    let mut m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let diag = if i == j { z } else { Complex64::new(0.0, 0.0) };
                    diag - a[(i, j)]
                })
                .collect()
        })
        .collect();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| m[x][k].norm().total_cmp(&m[y][k].norm()))
            .unwrap();
        if m[p][k].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            let (upper, lower) = m.split_at_mut(i);
            for (dst, &src) in lower[0][k..].iter_mut().zip(&upper[k][k..]) {
                *dst -= f * src;
            }
        }
    }
    det
}

/// Durand–Kerner on the monic characteristic polynomial, evaluated pointwise
/// so no coefficients or companion matrix are formed.
fn durand_kerner(a: &Matrix) -> Vec<Complex64> {
    let n = a.rows();
    let radius = 1.0 + a.frobenius_norm();
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= z[i] - z[j];
                }
            }
            let step = char_poly_at(a, z[i]) / denom;
            z[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn max_real(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
}

/// Greedy multiset match; returns the largest pairing distance.
fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut pool: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = pool
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        worst = worst.max(d);
        pool.swap_remove(k);
    }
    worst
}

#[test]
fn drift_spectrum_matches_polynomial_roots() {
    let a = build_drift(&working_point(5.0, 5.0, 0.010)).unwrap();
    let spectrum = eigenvalues(&a).unwrap();
    let roots = durand_kerner(&a);
    assert!(multiset_distance(spectrum.as_slice(), &roots) < 1e-9);
    let margin = spectrum.max_real();
    assert!((margin - max_real(&roots)).abs() < 1e-10);
    assert!(margin < 0.0);
}

#[test]
fn random_36x36_solve_residual() {
    let mut r = rng(36);
    for _ in 0..20 {
        let m = random_matrix(&mut r, 36).add(&Matrix::identity(36).scale(8.0));
        let b: Vec<f64> = (0..36).map(|k| (k as f64 * 0.37).sin()).collect();
        let x = solve_linear(&m, &b).unwrap();
        let mx = m.matvec(&x);
        let resid = mx.iter().zip(&b).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt();
        let xnorm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let bnorm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(resid <= 1e-10 * (m.frobenius_norm() * xnorm + bnorm));
    }
}

#[test]
fn reference_point_lyapunov_matches_kronecker() {
    let p = working_point(5.0, 5.0, 0.010);
    let (a, d) = (build_drift(&p).unwrap(), build_diffusion(&p).unwrap());
    let bs = solve_lyapunov(&a, &d).unwrap();
    let kr = solve_lyapunov_kronecker(&a, &d).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            assert!((bs[(i, j)] - kr[(i, j)]).abs() < 1e-8, "({i},{j})");
        }
    }
    assert!(lyapunov_residual(&a, &bs, &d) < 1e-10 * d.frobenius_norm());
}

#[test]
fn uncoupled_solution_is_block_diagonal() {
    let mut p = working_point(0.0, 0.0, 0.010);
    p.omega_lc = 1.2;
    let c = solve_lyapunov(&build_drift(&p).unwrap(), &build_diffusion(&p).unwrap()).unwrap();
    let block = |k: usize| k / 2;
    for i in 0..6 {
        for j in 0..6 {
            if block(i) != block(j) {
                assert_eq!(c[(i, j)], 0.0, "({i},{j})");
            }
        }
    }
    // Cavity block: vacuum. Oscillator blocks: thermal to O(γ/ω).
    assert!((c[(0, 0)] - 0.5).abs() < 1e-12);
    assert!((c[(2, 2)] - (p.n_m + 0.5)).abs() < 1e-6 * p.n_m);
    assert!((c[(5, 5)] - (p.n_lc + 0.5)).abs() < 1e-4 * p.n_lc);
}

fn permutation_similarity(a: &Matrix, perm: &[usize]) -> Matrix {
    let n = a.rows();
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(perm[i], perm[j])];
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bartels_stewart_matches_kronecker(seed in any::<u64>(), rank in 1usize..=6) {
        let mut r = rng(seed);
        let a = random_stable(&mut r, 6);
        let d = random_psd(&mut r, 6, rank);
        let c = solve_lyapunov(&a, &d).unwrap();
        let oracle = solve_lyapunov_kronecker(&a, &d).unwrap();
        let scale = oracle.frobenius_norm();
        prop_assert!(c.sub(&oracle).max_abs() <= 1e-8 * scale);
        prop_assert!(lyapunov_residual(&a, &c, &d) <= 1e-10 * d.frobenius_norm());
        prop_assert_eq!(c.asymmetry(), 0.0);
    }

    #[test]
    fn spectrum_invariant_under_permutation(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let e1 = eigenvalues(&a).unwrap();
        let e2 = eigenvalues(&permutation_similarity(&a, &perm)).unwrap();
        prop_assert!(multiset_distance(e1.as_slice(), e2.as_slice()) < 1e-8);
    }

    #[test]
    fn spectrum_conjugate_pairs_and_trace(seed in any::<u64>(), n in 1usize..=8) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n);
        let spectrum = eigenvalues(&a).unwrap();
        prop_assert_eq!(spectrum.len(), n);
        for z in spectrum.iter().filter(|z| z.im != 0.0) {
            let partner = spectrum.iter().any(|w| (w - z.conj()).norm() < 1e-10);
            prop_assert!(partner, "{:?} has no conjugate in {:?}", z, spectrum);
        }
        let tr = a.trace();
        prop_assert!((spectrum.sum().re - tr).abs() <= 1e-10 * (1.0 + tr.abs()));
    }
}
