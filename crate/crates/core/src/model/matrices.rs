use super::{EffectiveParams, ModelError};
use crate::linalg::Matrix;

/// Structurally nonzero `(row, col)` positions of the drift matrix, ordering
/// `(X, Y, x, p, q, φ)`.
pub const DRIFT_NONZERO_PATTERN: [(usize, usize); 14] = [
    (0, 0),
    (0, 1),
    (1, 0),
    (1, 1),
    (1, 2),
    (2, 3),
    (3, 0),
    (3, 2),
    (3, 3),
    (3, 4),
    (4, 5),
    (5, 2),
    (5, 4),
    (5, 5),
];

/// Drift matrix of the linearized quadrature dynamics `u̇ = A u + n`.
pub fn build_drift(p: &EffectiveParams) -> Result<Matrix, ModelError> {
    p.validate()?;
    let (k, d, wm, wlc) = (p.kappa, p.delta, p.omega_m, p.omega_lc);
    let (big_g, g) = (p.om_coupling, p.em_coupling);
    let mut a = Matrix::zeros(6, 6);
    a[(0, 0)] = -k;
    a[(0, 1)] = d;
    a[(1, 0)] = -d;
    a[(1, 1)] = -k;
    a[(1, 2)] = big_g;
    a[(2, 3)] = wm;
    a[(3, 0)] = big_g;
    a[(3, 2)] = -wm;
    a[(3, 3)] = -p.gamma_m;
    a[(3, 4)] = -g;
    a[(4, 5)] = wlc;
    a[(5, 2)] = -g;
    a[(5, 4)] = -wlc;
    a[(5, 5)] = -p.gamma_lc;
    Ok(a)
}

/// Diffusion matrix `diag(κ, κ, 0, γ_m(2n̄_m+1), 0, γ_LC(2n̄_LC+1))`.
pub fn build_diffusion(p: &EffectiveParams) -> Result<Matrix, ModelError> {
    p.validate()?;
    Ok(Matrix::from_diag(&[
        p.kappa,
        p.kappa,
        0.0,
        p.gamma_m * (2.0 * p.n_m + 1.0),
        0.0,
        p.gamma_lc * (2.0 * p.n_lc + 1.0),
    ]))
}
