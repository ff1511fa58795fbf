//! Steady-state mean values of the nonlinear dynamics.
//!
//! With `ȧ = ẋ = ṗ = q̇ = φ̇ = 0` the means satisfy
//!
//! ```text
//! a_s = E / (κ + iΔ),             Δ     = Δ₀ - G₀ x_s
//! x_s = (G₀|a_s|² - g₀ q_s²) / ω_m,  ω'_LC = ω_LC + 2 g₀ x_s
//! q_s = (q₀ V̄ / ħ) / ω'_LC,         p_s = φ_s = 0
//! ```
//!
//! Everything depends on `x_s` alone, so the system is solved as a damped
//! scalar fixed-point iteration on `x_s`.

use num_complex::Complex64;

use super::{DriveParams, ModelError, HBAR};
use crate::math;

const DAMPING: f64 = 0.5;
const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SemiclassicalState {
    /// Cavity amplitude in the phase reference where it is real and positive.
    pub a_s: Complex64,
    /// Phase of `E / (κ + iΔ)` removed by that reference.
    pub drive_phase: f64,
    pub x_s: f64,
    pub q_s: f64,
    pub p_s: f64,
    pub phi_s: f64,
    /// Effective detuning `Δ = Δ₀ - G₀ x_s`.
    pub delta_eff: f64,
    /// Effective LC frequency `ω_LC + 2 g₀ x_s`.
    pub omega_lc_eff: f64,
    pub iterations: usize,
    /// Largest relative residual over the five mean-value relations.
    pub residual: f64,
}

struct Means {
    delta: f64,
    omega_lc_eff: f64,
    amplitude: Complex64,
    q: f64,
    x_next: f64,
}

fn evaluate(d: &DriveParams, delta0: f64, x: f64, drive: f64, charge_drive: f64) -> Result<Means, ModelError> {
    let delta = delta0 - d.g0_om * x;
    let omega_lc_eff = d.omega_lc + 2.0 * d.g0_em * x;
    if omega_lc_eff.is_nan() || omega_lc_eff <= 0.0 {
        return Err(ModelError::Unphysical { omega_lc_eff });
    }
    let amplitude = Complex64::new(drive, 0.0) / Complex64::new(d.kappa, delta);
    let q = charge_drive / omega_lc_eff;
    let x_next = (d.g0_om * amplitude.norm_sqr() - d.g0_em * q * q) / d.omega_m;
    Ok(Means {
        delta,
        omega_lc_eff,
        amplitude,
        q,
        x_next,
    })
}

fn rel(err: f64, scale: f64) -> f64 {
    if err == 0.0 {
        0.0
    } else {
        err / scale.max(f64::MIN_POSITIVE)
    }
}

/// Solves for the steady-state means at bare detuning `delta0 = ω_c - ω_l`.
pub fn solve_semiclassical(d: &DriveParams, delta0: f64) -> Result<SemiclassicalState, ModelError> {
    d.validate()?;
    if !delta0.is_finite() {
        return Err(ModelError::InvalidParameter {
            name: "delta0",
            value: delta0,
        });
    }
    let mismatch = (d.omega_c - d.omega_l - delta0).abs();
    if mismatch > 1e-6 * delta0.abs() + 1e-12 * d.omega_c {
        return Err(ModelError::InvalidParameter {
            name: "delta0",
            value: delta0,
        });
    }

    let drive = d.drive_rate();
    let charge_drive = d.charge_zpf() * d.bias_voltage / HBAR;

    let mut x = 0.0f64;
    let mut iterations = 0;
    let mut step = f64::INFINITY;
    loop {
        if iterations >= MAX_ITERATIONS {
            return Err(ModelError::NotConverged {
                iterations,
                residual: rel(step, x.abs()),
            });
        }
        iterations += 1;
        let x_next = evaluate(d, delta0, x, drive, charge_drive)?.x_next;
        step = (x_next - x).abs();
        if step <= TOLERANCE * (1.0 + x_next.abs()) {
            x = x_next;
            break;
        }
        x = (1.0 - DAMPING) * x + DAMPING * x_next;
    }

    let m = evaluate(d, delta0, x, drive, charge_drive)?;
    let a_abs = math::hypot(m.amplitude.re, m.amplitude.im);
    let drive_phase = math::atan2(m.amplitude.im, m.amplitude.re);

    // Residuals of the five relations, each relative to its own scale.
    let raw = Complex64::new(drive, 0.0) / Complex64::new(d.kappa, m.delta);
    let r_a = rel((a_abs - math::hypot(raw.re, raw.im)).abs(), a_abs);
    let x_terms = (d.g0_om * a_abs * a_abs).abs() + (d.g0_em * m.q * m.q).abs();
    let r_x = rel(
        (x * d.omega_m - (d.g0_om * a_abs * a_abs - d.g0_em * m.q * m.q)).abs(),
        x_terms,
    );
    let r_q = rel((m.q * m.omega_lc_eff - charge_drive).abs(), charge_drive.abs());
    let r_delta = rel(
        (m.delta - (delta0 - d.g0_om * x)).abs(),
        delta0.abs() + (d.g0_om * x).abs(),
    );
    let r_w = rel(
        (m.omega_lc_eff - (d.omega_lc + 2.0 * d.g0_em * x)).abs(),
        d.omega_lc,
    );
    let residual = r_a.max(r_x).max(r_q).max(r_delta).max(r_w);

    Ok(SemiclassicalState {
        a_s: Complex64::new(a_abs, 0.0),
        drive_phase,
        x_s: x,
        q_s: m.q,
        p_s: 0.0,
        phi_s: 0.0,
        delta_eff: m.delta,
        omega_lc_eff: m.omega_lc_eff,
        iterations,
        residual,
    })
}

/// Effective couplings `(G, g) = (√2 G₀ a_s, 2 g₀ q_s)`.
pub fn effective_couplings(s: &SemiclassicalState, d: &DriveParams) -> (f64, f64) {
    (
        core::f64::consts::SQRT_2 * d.g0_om * s.a_s.re,
        2.0 * d.g0_em * s.q_s,
    )
}
