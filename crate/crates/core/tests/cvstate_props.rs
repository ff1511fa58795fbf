mod common;

use common::{local_symplectic, random_two_mode_cm, rng, working_point};
use cvsteady_core::cvstate::{
    duan_sum, effective_occupation, extract_mech_lc, is_physical, log_negativity,
    log_negativity_two_mode, min_symplectic_eigenvalue, min_symplectic_eigenvalue_spectral,
    partial_transpose, CovarianceMatrix, Mode,
};
use cvsteady_core::linalg::solve_lyapunov_kronecker;
use cvsteady_core::model::{build_diffusion, build_drift};
use cvsteady_core::{analyze_point, Matrix};
use proptest::prelude::*;

/// Two-mode log-negativity from the textbook formula on the original blocks:
/// `Σ̃ = det A + det B - 2 det C`, evaluated without the library's routines.
fn reference_log_negativity(c4: &Matrix) -> f64 {
    let det2 = |r: usize, c: usize| {
        c4[(r, c)] * c4[(r + 1, c + 1)] - c4[(r, c + 1)] * c4[(r + 1, c)]
    };
    let sigma = det2(0, 0) + det2(2, 2) - 2.0 * det2(0, 2);
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = c4[(i, j)];
        }
    }
    let det = laplace_det(&m);
    let nu = ((sigma - (sigma * sigma - 4.0 * det).sqrt()) / 2.0).sqrt();
    (-(2.0 * nu).ln()).max(0.0)
}

fn laplace_det(m: &[[f64; 4]; 4]) -> f64 {
    let minor3 = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let e = |r: usize, c: usize| m[r][cols[c]];
        e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1))
            - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0))
            + e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0))
    };
    (0..4)
        .map(|c| if c % 2 == 0 { 1.0 } else { -1.0 } * m[0][c] * minor3(c))
        .sum()
}

#[test]
fn reference_point_state() {
    let p = working_point(5.0, 5.0, 0.010);
    let r = analyze_point(&p).unwrap();
    let s = r.state.as_ref().unwrap();
    // Values quoted for this operating point, with two-digit precision.
    assert!((s.log_negativity - 0.18).abs() <= 0.02, "{}", s.log_negativity);
    assert!((s.n_m_eff - 0.15).abs() <= 0.02, "{}", s.n_m_eff);
    assert!((s.n_lc_eff - 0.08).abs() <= 0.02, "{}", s.n_lc_eff);
    assert!(s.min_symplectic < 0.5);
    assert!((s.min_symplectic - 0.5 * (-s.log_negativity).exp()).abs() < 1e-12);

    // Same quantities through the Kronecker oracle and the reference formula.
    let c = solve_lyapunov_kronecker(&build_drift(&p).unwrap(), &build_diffusion(&p).unwrap())
        .unwrap();
    let idx = [2, 3, 4, 5];
    let c4 = c.principal_submatrix(&idx);
    assert!((reference_log_negativity(&c4) - s.log_negativity).abs() < 1e-9);
    let n_m = 0.5 * (c[(2, 2)] + c[(3, 3)] - 1.0);
    let n_lc = 0.5 * (c[(4, 4)] + c[(5, 5)] - 1.0);
    assert!((n_m - s.n_m_eff).abs() < 1e-9);
    assert!((n_lc - s.n_lc_eff).abs() < 1e-9);
    let duan = c[(2, 2)] + c[(4, 4)] + 2.0 * c[(2, 4)] + c[(3, 3)] + c[(5, 5)] - 2.0 * c[(3, 5)];
    assert!((duan - s.duan).abs() < 1e-9);

    // Mech/LC block equals the re-indexed oracle solution.
    let lib_c4 = extract_mech_lc(&s.covariance).unwrap();
    assert!(lib_c4.matrix().sub(&c4).max_abs() < 1e-8);
}

#[test]
fn duan_anchor_high_q() {
    let mut p = working_point(6.0, 6.0, 0.010);
    p.gamma_lc = p.omega_lc / 1e5;
    let r = analyze_point(&p).unwrap();
    assert!(r.duan().unwrap() < 2.0);
}

#[test]
fn vacuum_and_thermal_anchors() {
    let vac = CovarianceMatrix::thermal(&[0.0, 0.0, 0.0]).unwrap();
    assert_eq!(duan_sum(&vac).unwrap(), 2.0);
    assert_eq!(log_negativity(&vac).unwrap(), 0.0);
    for mode in [Mode::Optical, Mode::Mechanical, Mode::Electrical] {
        assert_eq!(effective_occupation(&vac, mode).unwrap(), 0.0);
    }
    let th = CovarianceMatrix::thermal(&[0.0, 1.5, 0.25]).unwrap();
    assert!((duan_sum(&th).unwrap() - (2.0 + 2.0 * (1.5 + 0.25))).abs() < 1e-15);
    let c4 = extract_mech_lc(&th).unwrap();
    assert_eq!(min_symplectic_eigenvalue(c4.matrix()).unwrap(), 0.75);
}

fn as_cm(m: &Matrix) -> CovarianceMatrix {
    CovarianceMatrix::new(m.clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closed_form_matches_spectral(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c4 = random_two_mode_cm(&mut r);
        let pt = partial_transpose(&as_cm(&c4)).unwrap();
        for m in [&c4, pt.matrix()] {
            let closed = min_symplectic_eigenvalue(m).unwrap();
            let spectral = min_symplectic_eigenvalue_spectral(m).unwrap();
            prop_assert!((closed - spectral).abs() < 1e-9, "{} vs {}", closed, spectral);
        }
        // Physical input: both symplectic eigenvalues of C4 are at least 1/2.
        prop_assert!(min_symplectic_eigenvalue(&c4).unwrap() >= 0.5 - 1e-9);
        prop_assert!((reference_log_negativity(&c4)
            - log_negativity_two_mode(&as_cm(&c4)).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn local_symplectic_invariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c4 = random_two_mode_cm(&mut r);
        let s = local_symplectic(&mut r);
        let moved = s.transpose().matmul(&c4).matmul(&s).symmetrized();
        let e0 = log_negativity_two_mode(&as_cm(&c4)).unwrap();
        let e1 = log_negativity_two_mode(&as_cm(&moved)).unwrap();
        prop_assert!((e0 - e1).abs() < 1e-8, "{} vs {}", e0, e1);
    }

    #[test]
    fn partial_transpose_involution(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c4 = as_cm(&random_two_mode_cm(&mut r));
        let once = partial_transpose(&c4).unwrap();
        prop_assert_eq!(once.matrix().asymmetry(), 0.0);
        prop_assert_eq!(partial_transpose(&once).unwrap(), c4);
    }

    #[test]
    fn lyapunov_states_physical(big_g in 0.0f64..6.0, g in 0.0f64..6.0,
                                delta in 0.4f64..2.0, t_mk in 1.0f64..200.0) {
        let mut p = working_point(big_g, g, t_mk * 1e-3);
        p.delta = delta;
        let r = analyze_point(&p).unwrap();
        if let Some(s) = r.state {
            prop_assert!(is_physical(&s.covariance).unwrap());
            prop_assert!(s.duan >= 0.0);
            if s.duan < 2.0 {
                prop_assert!(s.log_negativity > 0.0);
            }
        }
    }
}
