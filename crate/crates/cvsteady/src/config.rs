//! Sweep configuration documents.
//!
//! A config is a JSON object with a strict schema:
//!
//! ```json
//! {
//!   "units": "omega_m",
//!   "fixed": { "G": 0.5, "g": 0.5, "T": 0.01 },
//!   "axis1": { "name": "delta", "min": 0.2, "max": 2.0, "count": 81 },
//!   "axis2": { "name": "omega_lc", "min": 0.5, "max": 1.5, "count": 81, "scale": "linear" },
//!   "occupation_mode": "high_T"
//! }
//! ```
//!
//! Rates are either in units of the mechanical frequency (`"omega_m"`) or
//! ordinary frequencies in Hz (`"hz"`), in which case they are divided by
//! `fixed.omega_m_hz`. Temperatures are in kelvin. Unset values fall back to
//! the resonant working point: `ω_LC = Δ = ω_m`, `κ = 0.1 ω_m`,
//! `γ_m = 1e-6 ω_m`, `Q_LC = 1e5`, `G = g = 0`, `T = 10 mK`,
//! `ω_m / 2π = 1 MHz`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;

use cvsteady_core::model::thermal_occupation;
use cvsteady_core::{EffectiveParams, ModelError, OccupationMode};
use serde::{Deserialize, Serialize};

pub const DEFAULT_OMEGA_M_HZ: f64 = 1e6;
pub const DEFAULT_TEMPERATURE: f64 = 0.010;
pub const DEFAULT_Q_LC: f64 = 1e5;
pub const DEFAULT_KAPPA: f64 = 0.1;
pub const DEFAULT_GAMMA_M: f64 = 1e-6;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: String, reason: String },
}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        field: field.into(),
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Units {
    #[default]
    #[serde(rename = "omega_m")]
    OmegaM,
    #[serde(rename = "hz")]
    Hz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Occupation {
    #[default]
    #[serde(rename = "high_T")]
    HighTemperature,
    #[serde(rename = "exact")]
    Exact,
}

impl From<Occupation> for OccupationMode {
    fn from(o: Occupation) -> Self {
        match o {
            Occupation::HighTemperature => OccupationMode::HighTemperature,
            Occupation::Exact => OccupationMode::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Param {
    #[serde(rename = "omega_m")]
    OmegaM,
    #[serde(rename = "omega_lc")]
    OmegaLc,
    #[serde(rename = "delta")]
    Delta,
    #[serde(rename = "kappa")]
    Kappa,
    #[serde(rename = "gamma_m")]
    GammaM,
    #[serde(rename = "gamma_lc")]
    GammaLc,
    #[serde(rename = "Q_LC")]
    QLc,
    #[serde(rename = "G")]
    OmCoupling,
    #[serde(rename = "g")]
    EmCoupling,
    T,
    #[serde(rename = "n_m")]
    NM,
    #[serde(rename = "n_lc")]
    NLc,
}

impl Param {
    pub const ALL: [Param; 12] = [
        Param::OmegaM,
        Param::OmegaLc,
        Param::Delta,
        Param::Kappa,
        Param::GammaM,
        Param::GammaLc,
        Param::QLc,
        Param::OmCoupling,
        Param::EmCoupling,
        Param::T,
        Param::NM,
        Param::NLc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::OmegaM => "omega_m",
            Param::OmegaLc => "omega_lc",
            Param::Delta => "delta",
            Param::Kappa => "kappa",
            Param::GammaM => "gamma_m",
            Param::GammaLc => "gamma_lc",
            Param::QLc => "Q_LC",
            Param::OmCoupling => "G",
            Param::EmCoupling => "g",
            Param::T => "T",
            Param::NM => "n_m",
            Param::NLc => "n_lc",
        }
    }

    /// Whether the value is a frequency and therefore subject to `units`.
    pub fn is_rate(self) -> bool {
        !matches!(self, Param::QLc | Param::T | Param::NM | Param::NLc)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Explicitly set parameter values; anything absent takes its default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixed {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_m_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_lc: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_lc: Option<f64>,
    #[serde(rename = "Q_LC", default, skip_serializing_if = "Option::is_none")]
    pub q_lc: Option<f64>,
    #[serde(rename = "G", default, skip_serializing_if = "Option::is_none")]
    pub om_coupling: Option<f64>,
    #[serde(rename = "g", default, skip_serializing_if = "Option::is_none")]
    pub em_coupling: Option<f64>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_lc: Option<f64>,
}

impl Fixed {
    fn slot(&mut self, p: Param) -> &mut Option<f64> {
        match p {
            Param::OmegaM => &mut self.omega_m,
            Param::OmegaLc => &mut self.omega_lc,
            Param::Delta => &mut self.delta,
            Param::Kappa => &mut self.kappa,
            Param::GammaM => &mut self.gamma_m,
            Param::GammaLc => &mut self.gamma_lc,
            Param::QLc => &mut self.q_lc,
            Param::OmCoupling => &mut self.om_coupling,
            Param::EmCoupling => &mut self.em_coupling,
            Param::T => &mut self.temperature,
            Param::NM => &mut self.n_m,
            Param::NLc => &mut self.n_lc,
        }
    }

    pub fn get(&self, p: Param) -> Option<f64> {
        match p {
            Param::OmegaM => self.omega_m,
            Param::OmegaLc => self.omega_lc,
            Param::Delta => self.delta,
            Param::Kappa => self.kappa,
            Param::GammaM => self.gamma_m,
            Param::GammaLc => self.gamma_lc,
            Param::QLc => self.q_lc,
            Param::OmCoupling => self.om_coupling,
            Param::EmCoupling => self.em_coupling,
            Param::T => self.temperature,
            Param::NM => self.n_m,
            Param::NLc => self.n_lc,
        }
    }

    pub fn set(&mut self, p: Param, value: f64) {
        *self.slot(p) = Some(value);
    }

    fn present(&self) -> impl Iterator<Item = Param> + '_ {
        Param::ALL.into_iter().filter(|&p| self.get(p).is_some())
    }

    /// `self` with every value set in `over` replaced.
    pub fn overlaid(&self, over: &Fixed) -> Fixed {
        let mut out = self.clone();
        if over.omega_m_hz.is_some() {
            out.omega_m_hz = over.omega_m_hz;
        }
        for p in Param::ALL {
            if let Some(v) = over.get(p) {
                out.set(p, v);
            }
        }
        out
    }

    fn check_finite(&self, prefix: &str) -> Result<(), ConfigError> {
        if let Some(f) = self.omega_m_hz {
            if !(f.is_finite() && f > 0.0) {
                return Err(invalid(
                    format!("{prefix}omega_m_hz"),
                    "must be finite and positive",
                ));
            }
        }
        for p in self.present() {
            if !self.get(p).is_some_and(f64::is_finite) {
                return Err(invalid(format!("{prefix}{p}"), "must be finite"));
            }
        }
        Ok(())
    }

    /// Effective parameters in units of the mechanical reference frequency.
    pub fn resolve(
        &self,
        units: Units,
        occupation: Occupation,
    ) -> Result<EffectiveParams, ModelError> {
        let f_m = self.omega_m_hz.unwrap_or(DEFAULT_OMEGA_M_HZ);
        let unit = match units {
            Units::OmegaM => 1.0,
            Units::Hz => f_m,
        };
        let rate = |v: Option<f64>, default: f64| v.map_or(default, |x| x / unit);
        let omega_lc = rate(self.omega_lc, 1.0);
        let q_lc = self.q_lc.unwrap_or(DEFAULT_Q_LC);
        if q_lc.is_nan() || q_lc <= 0.0 {
            return Err(ModelError::InvalidParameter {
                name: "Q_LC",
                value: q_lc,
            });
        }
        let mut p = EffectiveParams {
            omega_m: rate(self.omega_m, 1.0),
            omega_lc,
            delta: rate(self.delta, 1.0),
            kappa: rate(self.kappa, DEFAULT_KAPPA),
            gamma_m: rate(self.gamma_m, DEFAULT_GAMMA_M),
            gamma_lc: rate(self.gamma_lc, omega_lc / q_lc),
            om_coupling: rate(self.om_coupling, 0.0),
            em_coupling: rate(self.em_coupling, 0.0),
            n_m: 0.0,
            n_lc: 0.0,
        };
        p.validate()?;
        let temperature = self.temperature.unwrap_or(DEFAULT_TEMPERATURE);
        let unit_si = 2.0 * PI * f_m;
        let mode = occupation.into();
        p.n_m = match self.n_m {
            Some(n) => n,
            None => thermal_occupation(p.omega_m * unit_si, temperature, mode)?,
        };
        p.n_lc = match self.n_lc {
            Some(n) => n,
            None => thermal_occupation(p.omega_lc * unit_si, temperature, mode)?,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub name: Param,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub scale: Scale,
}

impl Axis {
    pub fn new(name: Param, min: f64, max: f64, count: usize, scale: Scale) -> Self {
        Self {
            name,
            min,
            max,
            count,
            scale,
        }
    }

    fn validate(&self, field: &str) -> Result<(), ConfigError> {
        if self.count < 2 {
            return Err(invalid(format!("{field}.count"), "must be at least 2"));
        }
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(invalid(format!("{field}.min"), "bounds must be finite"));
        }
        if self.min.partial_cmp(&self.max) != Some(core::cmp::Ordering::Less) {
            return Err(invalid(format!("{field}.max"), "must exceed min"));
        }
        if self.scale == Scale::Log && (self.min.is_nan() || self.min <= 0.0) {
            return Err(invalid(
                format!("{field}.min"),
                "must be positive on a log scale",
            ));
        }
        Ok(())
    }

    /// Grid nodes; both endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i + 1 == self.count {
                    return self.max;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * t,
                    Scale::Log => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect()
    }
}

/// A labeled set of overrides; the grid is repeated once per series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Series {
    pub label: String,
    pub overrides: Fixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default)]
    pub units: Units,
    #[serde(default)]
    pub fixed: Fixed,
    pub axis1: Axis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis2: Option<Axis>,
    #[serde(default)]
    pub occupation_mode: Occupation,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<Series>,
}

impl SweepConfig {
    pub fn axes(&self) -> impl Iterator<Item = &Axis> {
        core::iter::once(&self.axis1).chain(self.axis2.as_ref())
    }

    pub fn point_count(&self) -> usize {
        self.series.len().max(1) * self.axes().map(|a| a.count).product::<usize>()
    }

    /// Replaces every axis resolution by `count`.
    pub fn with_resolution(mut self, count: usize) -> Self {
        self.axis1.count = count;
        if let Some(a) = self.axis2.as_mut() {
            a.count = count;
        }
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.fixed.check_finite("fixed.")?;
        self.axis1.validate("axis1")?;
        let swept: BTreeSet<Param> = self.axes().map(|a| a.name).collect();
        if let Some(a2) = &self.axis2 {
            a2.validate("axis2")?;
            if a2.name == self.axis1.name {
                return Err(invalid("axis2.name", "duplicates axis1.name"));
            }
        }
        let mut labels = BTreeSet::new();
        for (k, s) in self.series.iter().enumerate() {
            let field = format!("series[{k}]");
            s.overrides.check_finite(&format!("{field}.overrides."))?;
            if !labels.insert(s.label.as_str()) {
                return Err(invalid(format!("{field}.label"), "duplicate label"));
            }
        }
        let layers = if self.series.is_empty() {
            vec![self.fixed.clone()]
        } else {
            self.series
                .iter()
                .map(|s| self.fixed.overlaid(&s.overrides))
                .collect()
        };
        for layer in &layers {
            if let Some(p) = layer.present().find(|p| swept.contains(p)) {
                return Err(invalid(p.name(), "is both fixed and swept"));
            }
            let has = |p: Param| layer.get(p).is_some() || swept.contains(&p);
            if has(Param::GammaLc) && has(Param::QLc) {
                return Err(invalid("Q_LC", "conflicts with gamma_lc"));
            }
            if swept.contains(&Param::T) && has(Param::NM) && has(Param::NLc) {
                return Err(invalid("T", "has no effect when n_m and n_lc are both set"));
            }
        }
        Ok(())
    }
}

pub fn parse_config(text: &str) -> Result<SweepConfig, ConfigError> {
    let cfg: SweepConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn serialize_config(cfg: &SweepConfig) -> String {
    serde_json::to_string_pretty(cfg).expect("config serializes")
}
