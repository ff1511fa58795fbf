//! Frequency-domain susceptibilities and the effective mechanical frequency
//! ("optical spring" plus the electromechanical shift).

use num_complex::Complex64;

use super::EffectiveParams;
use crate::math;

/// Cavity susceptibility `1 / (Δ² + (κ - iω)²)`.
pub fn cavity_susceptibility(p: &EffectiveParams, omega: f64) -> Complex64 {
    let k = Complex64::new(p.kappa, -omega);
    (Complex64::new(p.delta * p.delta, 0.0) + k * k).inv()
}

/// Mechanical susceptibility `ω_m / (ω_m² - ω² - iγ_m ω)`.
pub fn mech_susceptibility(p: &EffectiveParams, omega: f64) -> Complex64 {
    oscillator(p.omega_m, p.gamma_m, omega)
}

/// LC susceptibility `ω_LC / (ω_LC² - ω² - iγ_LC ω)`.
pub fn lc_susceptibility(p: &EffectiveParams, omega: f64) -> Complex64 {
    oscillator(p.omega_lc, p.gamma_lc, omega)
}

fn oscillator(w: f64, gamma: f64, omega: f64) -> Complex64 {
    Complex64::new(w, 0.0) / Complex64::new(w * w - omega * omega, -gamma * omega)
}

/// `χ_m^eff⁻¹ = χ_m⁻¹ - G²Δ χ_c - g² χ_LC`.
pub fn inverse_effective_mech_susceptibility(p: &EffectiveParams, omega: f64) -> Complex64 {
    let big_g2 = p.om_coupling * p.om_coupling;
    let g2 = p.em_coupling * p.em_coupling;
    mech_susceptibility(p, omega).inv()
        - cavity_susceptibility(p, omega) * (big_g2 * p.delta)
        - lc_susceptibility(p, omega) * g2
}

/// Squared effective mechanical frequency at evaluation frequency `omega`:
///
/// ```text
/// ω_m² - G²Δω_m(Δ²+κ²-ω²)/[(Δ²+κ²-ω²)² + 4κ²ω²]
///      - g²ω_LCω_m(ω_LC²-ω²)/[(ω_LC²-ω²)² + γ_LC²ω²]
/// ```
pub fn effective_mech_frequency_squared(p: &EffectiveParams, omega: f64) -> f64 {
    let w2 = omega * omega;
    let cav = p.delta * p.delta + p.kappa * p.kappa - w2;
    let opt = p.om_coupling * p.om_coupling * p.delta * p.omega_m * cav
        / (cav * cav + 4.0 * p.kappa * p.kappa * w2);
    let lc = p.omega_lc * p.omega_lc - w2;
    let ele = if lc == 0.0 {
        0.0
    } else {
        p.em_coupling * p.em_coupling * p.omega_lc * p.omega_m * lc
            / (lc * lc + p.gamma_lc * p.gamma_lc * w2)
    };
    p.omega_m * p.omega_m - opt - ele
}

/// Effective mechanical frequency; `None` when the radicand is negative.
pub fn effective_mech_frequency(p: &EffectiveParams, omega: f64) -> Option<f64> {
    let r = effective_mech_frequency_squared(p, omega);
    (r >= 0.0).then(|| math::sqrt(r))
}
