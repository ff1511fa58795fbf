use core::fmt;

use super::ModelError;
use crate::math;

/// Boltzmann constant, J/K (exact SI value).
pub const BOLTZMANN: f64 = 1.380649e-23;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054571817e-34;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OccupationMode {
    /// `k_B T / ħω`.
    #[default]
    HighTemperature,
    /// Bose–Einstein `1 / (exp(ħω / k_B T) - 1)`.
    Exact,
}

/// Mean thermal occupation of a bath mode at angular frequency `omega`
/// (rad/s) and temperature `temperature` (K).
pub fn thermal_occupation(
    omega: f64,
    temperature: f64,
    mode: OccupationMode,
) -> Result<f64, ModelError> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(ModelError::InvalidParameter {
            name: "omega",
            value: omega,
        });
    }
    if !(temperature.is_finite() && temperature >= 0.0) {
        return Err(ModelError::InvalidParameter {
            name: "T",
            value: temperature,
        });
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let ratio = HBAR * omega / (BOLTZMANN * temperature);
    Ok(match mode {
        OccupationMode::HighTemperature => 1.0 / ratio,
        OccupationMode::Exact => 1.0 / math::expm1(ratio),
    })
}

/// Working parameter set of the linearized dynamics.
///
/// All rates share one unit, normally the mechanical frequency (`omega_m = 1`).
/// `gamma_lc` follows the `2R/L` convention, so both baths enter the diffusion
/// matrix in the same form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveParams {
    pub omega_m: f64,
    pub omega_lc: f64,
    /// Effective cavity–laser detuning Δ.
    pub delta: f64,
    pub kappa: f64,
    pub gamma_m: f64,
    pub gamma_lc: f64,
    /// Effective optomechanical coupling `G`.
    pub om_coupling: f64,
    /// Effective electromechanical coupling `g`.
    pub em_coupling: f64,
    pub n_m: f64,
    pub n_lc: f64,
}

impl EffectiveParams {
    /// Resonant working point with feasible damping rates and no coupling:
    /// `Δ = ω_LC = ω_m = 1`, `κ = 0.1`, `γ_m = 1e-6`, `γ_LC = 1e-5 ω_LC`,
    /// zero bath occupations.
    pub fn baseline() -> Self {
        Self {
            omega_m: 1.0,
            omega_lc: 1.0,
            delta: 1.0,
            kappa: 0.1,
            gamma_m: 1e-6,
            gamma_lc: 1e-5,
            om_coupling: 0.0,
            em_coupling: 0.0,
            n_m: 0.0,
            n_lc: 0.0,
        }
    }

    pub fn with_couplings(mut self, om_coupling: f64, em_coupling: f64) -> Self {
        self.om_coupling = om_coupling;
        self.em_coupling = em_coupling;
        self
    }

    /// Sets both bath occupations from a temperature. `omega_m_si` is the
    /// mechanical angular frequency in rad/s and fixes the unit of every rate.
    pub fn with_temperature(
        mut self,
        temperature: f64,
        omega_m_si: f64,
        mode: OccupationMode,
    ) -> Result<Self, ModelError> {
        self.validate()?;
        let unit = omega_m_si / self.omega_m;
        self.n_m = thermal_occupation(self.omega_m * unit, temperature, mode)?;
        self.n_lc = thermal_occupation(self.omega_lc * unit, temperature, mode)?;
        Ok(self)
    }

    /// LC quality factor `ω_LC / γ_LC`.
    pub fn q_lc(&self) -> f64 {
        self.omega_lc / self.gamma_lc
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let checks: [(&'static str, f64, bool); 10] = [
            ("omega_m", self.omega_m, self.omega_m > 0.0),
            ("omega_lc", self.omega_lc, self.omega_lc > 0.0),
            ("delta", self.delta, true),
            ("kappa", self.kappa, self.kappa > 0.0),
            ("gamma_m", self.gamma_m, self.gamma_m > 0.0),
            ("gamma_lc", self.gamma_lc, self.gamma_lc > 0.0),
            ("G", self.om_coupling, self.om_coupling >= 0.0),
            ("g", self.em_coupling, self.em_coupling >= 0.0),
            ("n_m", self.n_m, self.n_m >= 0.0),
            ("n_lc", self.n_lc, self.n_lc >= 0.0),
        ];
        for (name, value, ok) in checks {
            if !ok || !value.is_finite() {
                return Err(ModelError::InvalidParameter { name, value });
            }
        }
        Ok(())
    }
}

impl fmt::Display for EffectiveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fields = [
            ("omega_m", self.omega_m),
            ("omega_lc", self.omega_lc),
            ("delta", self.delta),
            ("kappa", self.kappa),
            ("gamma_m", self.gamma_m),
            ("gamma_lc", self.gamma_lc),
            ("G", self.om_coupling),
            ("g", self.em_coupling),
            ("n_m", self.n_m),
            ("n_lc", self.n_lc),
        ];
        f.write_str("(")?;
        for (k, (name, v)) in fields.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            if *v != 0.0 && !(1e-3..1e6).contains(&v.abs()) {
                write!(f, "{name}={v:e}")?;
            } else {
                write!(f, "{name}={v}")?;
            }
        }
        f.write_str(")")
    }
}

/// Physical drive and circuit parameters, SI units (angular frequencies in
/// rad/s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    pub omega_c: f64,
    pub omega_l: f64,
    /// Laser power, W.
    pub laser_power: f64,
    pub kappa: f64,
    /// DC bias voltage, V.
    pub bias_voltage: f64,
    /// Inductance, H.
    pub inductance: f64,
    /// Resistance, Ω.
    pub resistance: f64,
    /// Bare LC frequency `1/√(LC)`.
    pub omega_lc: f64,
    /// Single-photon optomechanical coupling `G₀`.
    pub g0_om: f64,
    /// Bare electromechanical coupling `g₀`.
    pub g0_em: f64,
    pub omega_m: f64,
}

impl DriveParams {
    /// Cavity drive rate `E = √(2 P κ / ħ ω_l)`.
    pub fn drive_rate(&self) -> f64 {
        math::sqrt(2.0 * self.laser_power * self.kappa / (HBAR * self.omega_l))
    }

    /// Charge zero-point fluctuation `q₀ = √(ħ / L ω_LC)`.
    pub fn charge_zpf(&self) -> f64 {
        math::sqrt(HBAR / (self.inductance * self.omega_lc))
    }

    /// Electrical damping `2R/L`.
    pub fn gamma_lc(&self) -> f64 {
        2.0 * self.resistance / self.inductance
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let positive: [(&'static str, f64); 8] = [
            ("omega_c", self.omega_c),
            ("omega_l", self.omega_l),
            ("laser_power", self.laser_power),
            ("kappa", self.kappa),
            ("inductance", self.inductance),
            ("resistance", self.resistance),
            ("omega_lc", self.omega_lc),
            ("omega_m", self.omega_m),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(ModelError::InvalidParameter { name, value });
            }
        }
        // Bare couplings may vanish (no back-action).
        for (name, value) in [("g0_om", self.g0_om), ("g0_em", self.g0_em)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(ModelError::InvalidParameter { name, value });
            }
        }
        if !self.bias_voltage.is_finite() {
            return Err(ModelError::InvalidParameter {
                name: "bias_voltage",
                value: self.bias_voltage,
            });
        }
        Ok(())
    }
}
