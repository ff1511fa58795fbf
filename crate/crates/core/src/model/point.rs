use super::{
    build_diffusion, build_drift, effective_mech_frequency, EffectiveParams, ModelError,
};
use crate::cvstate::{
    duan_sum, effective_occupation, extract_mech_lc, min_symplectic_eigenvalue,
    partial_transpose, CovarianceMatrix, Mode,
};
use crate::linalg::{lyapunov_residual, real_schur, solve_lyapunov};
use crate::math;

/// Quantities that exist only for a stable point.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryDiagnostics {
    pub covariance: CovarianceMatrix,
    /// Minimum symplectic eigenvalue of the partially transposed mechanics/LC
    /// block.
    pub min_symplectic: f64,
    /// `max(0, -ln 2ν̃₋)`.
    pub log_negativity: f64,
    pub duan: f64,
    /// Occupations clamped at zero.
    pub n_m_eff: f64,
    pub n_lc_eff: f64,
    pub n_m_raw: f64,
    pub n_lc_raw: f64,
    /// `‖AC + CAᵀ + D‖_F / ‖D‖_F`.
    pub lyapunov_residual: f64,
}

impl StationaryDiagnostics {
    /// `-ln 2ν̃₋` before clamping.
    pub fn log_negativity_raw(&self) -> f64 {
        -math::ln(2.0 * self.min_symplectic)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    /// `max Re λ(A)`.
    pub stability_margin: f64,
    pub stable: bool,
    /// Effective mechanical frequency at `ω = Δ`; `None` if the radicand is
    /// negative.
    pub omega_m_eff: Option<f64>,
    /// Absent for unstable points.
    pub state: Option<StationaryDiagnostics>,
}

impl PointResult {
    pub fn log_negativity(&self) -> Option<f64> {
        self.state.as_ref().map(|s| s.log_negativity)
    }

    pub fn duan(&self) -> Option<f64> {
        self.state.as_ref().map(|s| s.duan)
    }

    pub fn n_m_eff(&self) -> Option<f64> {
        self.state.as_ref().map(|s| s.n_m_eff)
    }

    pub fn n_lc_eff(&self) -> Option<f64> {
        self.state.as_ref().map(|s| s.n_lc_eff)
    }
}

/// Stationary-state diagnostics at one parameter point.
///
/// Unstable points are flagged and the Lyapunov equation is not solved for
/// them. Errors carry the offending parameters.
pub fn analyze_point(p: &EffectiveParams) -> Result<PointResult, ModelError> {
    analyze(p).map_err(|e| e.at(p))
}

fn analyze(p: &EffectiveParams) -> Result<PointResult, ModelError> {
    let a = build_drift(p)?;
    let d = build_diffusion(p)?;
    let stability_margin = real_schur(&a)?.eigenvalues().max_real();
    let omega_m_eff = effective_mech_frequency(p, p.delta);

    if stability_margin.is_nan() || stability_margin >= 0.0 {
        return Ok(PointResult {
            stability_margin,
            stable: false,
            omega_m_eff,
            state: None,
        });
    }

    let c = solve_lyapunov(&a, &d)?;
    let residual = lyapunov_residual(&a, &c, &d) / d.frobenius_norm();
    let c6 = CovarianceMatrix::new(c)?;
    let pt = partial_transpose(&extract_mech_lc(&c6)?)?;
    let nu = min_symplectic_eigenvalue(pt.matrix())?;
    let n_m_raw = effective_occupation(&c6, Mode::Mechanical)?;
    let n_lc_raw = effective_occupation(&c6, Mode::Electrical)?;
    let duan = duan_sum(&c6)?;

    Ok(PointResult {
        stability_margin,
        stable: true,
        omega_m_eff,
        state: Some(StationaryDiagnostics {
            covariance: c6,
            min_symplectic: nu,
            log_negativity: (-math::ln(2.0 * nu)).max(0.0),
            duan,
            n_m_eff: n_m_raw.max(0.0),
            n_lc_eff: n_lc_raw.max(0.0),
            n_m_raw,
            n_lc_raw,
            lyapunov_residual: residual,
        }),
    })
}
