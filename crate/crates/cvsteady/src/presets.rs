//! Built-in sweep presets.

use crate::config::{
    Axis, Fixed, Occupation, Param, Scale, Series, SweepConfig, Units, DEFAULT_GAMMA_M,
    DEFAULT_KAPPA, DEFAULT_OMEGA_M_HZ, DEFAULT_TEMPERATURE,
};

pub const PRESET_NAMES: [&str; 5] = ["fig2a", "fig2b", "fig3", "fig4", "fig5"];
pub const FULL_RESOLUTION: usize = 81;
pub const COARSE_RESOLUTION: usize = 21;

#[derive(Debug, thiserror::Error)]
#[error("unknown preset `{0}`; available presets: {}", PRESET_NAMES.join(", "))]
pub struct UnknownPreset(pub String);

fn kappa(n: f64) -> f64 {
    n * DEFAULT_KAPPA
}

fn baseline() -> Fixed {
    Fixed {
        omega_m_hz: Some(DEFAULT_OMEGA_M_HZ),
        omega_m: Some(1.0),
        kappa: Some(DEFAULT_KAPPA),
        gamma_m: Some(DEFAULT_GAMMA_M),
        ..Fixed::default()
    }
}

fn config(fixed: Fixed, axis1: Axis, axis2: Option<Axis>, series: Vec<Series>) -> SweepConfig {
    SweepConfig {
        units: Units::OmegaM,
        fixed,
        axis1,
        axis2,
        occupation_mode: Occupation::HighTemperature,
        series,
    }
}

fn couplings(big_g: f64, g: f64) -> Fixed {
    Fixed {
        om_coupling: Some(kappa(big_g)),
        em_coupling: Some(kappa(g)),
        ..Fixed::default()
    }
}

/// Detuning × LC frequency at `G = g = n κ`.
fn fig2(n: f64) -> SweepConfig {
    let fixed = Fixed {
        q_lc: Some(1e5),
        temperature: Some(DEFAULT_TEMPERATURE),
        ..baseline()
    }
    .overlaid(&couplings(n, n));
    config(
        fixed,
        Axis::new(Param::Delta, 0.2, 2.0, FULL_RESOLUTION, Scale::Linear),
        Some(Axis::new(Param::OmegaLc, 0.5, 1.5, FULL_RESOLUTION, Scale::Linear)),
        vec![],
    )
}

pub fn preset(name: &str) -> Result<SweepConfig, UnknownPreset> {
    let cfg = match name {
        "fig2a" => fig2(3.0),
        "fig2b" => fig2(5.0),
        "fig3" => config(
            Fixed {
                omega_lc: Some(1.0),
                delta: Some(1.0),
                q_lc: Some(1e5),
                temperature: Some(DEFAULT_TEMPERATURE),
                ..baseline()
            },
            Axis::new(Param::EmCoupling, 0.0, kappa(6.0), FULL_RESOLUTION, Scale::Linear),
            Some(Axis::new(Param::OmCoupling, 0.0, kappa(6.0), FULL_RESOLUTION, Scale::Linear)),
            vec![],
        ),
        "fig4" => config(
            Fixed {
                omega_lc: Some(1.0),
                delta: Some(1.0),
                q_lc: Some(1e5),
                ..baseline()
            },
            Axis::new(Param::T, 0.001, 0.300, FULL_RESOLUTION, Scale::Log),
            None,
            vec![
                Series {
                    label: "g8_G6".into(),
                    overrides: couplings(6.0, 8.0),
                },
                Series {
                    label: "g5_G5".into(),
                    overrides: couplings(5.0, 5.0),
                },
            ],
        ),
        "fig5" => config(
            Fixed {
                omega_lc: Some(1.0),
                delta: Some(1.0),
                ..baseline()
            }
            .overlaid(&couplings(6.0, 6.0)),
            Axis::new(Param::T, 0.001, 0.100, FULL_RESOLUTION, Scale::Linear),
            Some(Axis::new(Param::QLc, 1e4, 1e5, FULL_RESOLUTION, Scale::Log)),
            vec![],
        ),
        other => return Err(UnknownPreset(other.to_owned())),
    };
    Ok(cfg)
}
