//! Linearized opto-electro-mechanical model.
//!
//! Three modes: an optical cavity (quadratures `X, Y`), a mechanical membrane
//! (`x, p`) and an LC circuit (`q, φ`). The membrane couples to the cavity
//! through radiation pressure with effective rate `G` and to the circuit
//! capacitively with effective rate `g`. Rates in [`EffectiveParams`] are
//! expressed in units of the mechanical frequency (so `omega_m` is normally 1);
//! temperature enters only through the bath occupations.

use alloc::boxed::Box;
use core::fmt;

use crate::cvstate::CvError;
use crate::linalg::LinalgError;

mod matrices;
mod params;
mod point;
mod semiclassical;
mod spring;
mod stability;

pub use matrices::{build_diffusion, build_drift, DRIFT_NONZERO_PATTERN};
pub use params::{
    thermal_occupation, DriveParams, EffectiveParams, OccupationMode, BOLTZMANN, HBAR,
};
pub use point::{analyze_point, PointResult, StationaryDiagnostics};
pub use semiclassical::{effective_couplings, solve_semiclassical, SemiclassicalState};
pub use spring::{
    cavity_susceptibility, effective_mech_frequency, effective_mech_frequency_squared,
    inverse_effective_mech_susceptibility, lc_susceptibility, mech_susceptibility,
};
pub use stability::{characteristic_polynomial_exact, routh_hurwitz_stable, stability_margin};

#[derive(Debug, Clone, PartialEq)]
pub enum ModelError {
    InvalidParameter { name: &'static str, value: f64 },
    /// Semiclassical fixed-point iteration hit its cap.
    NotConverged { iterations: usize, residual: f64 },
    /// Effective LC frequency became non-positive during the semiclassical solve.
    Unphysical { omega_lc_eff: f64 },
    Linalg(LinalgError),
    Cv(CvError),
    AtPoint {
        params: EffectiveParams,
        source: Box<ModelError>,
    },
}

impl ModelError {
    pub(crate) fn at(self, params: &EffectiveParams) -> Self {
        match self {
            e @ ModelError::AtPoint { .. } => e,
            e => ModelError::AtPoint {
                params: *params,
                source: Box::new(e),
            },
        }
    }
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Self::NotConverged {
                iterations,
                residual,
            } => write!(
                f,
                "semiclassical iteration did not converge after {iterations} iterations (residual {residual:e})"
            ),
            Self::Unphysical { omega_lc_eff } => write!(
                f,
                "effective LC frequency {omega_lc_eff:e} is not positive"
            ),
            Self::Linalg(e) => write!(f, "{e}"),
            Self::Cv(e) => write!(f, "{e}"),
            Self::AtPoint { params, source } => write!(f, "{source} at {params}"),
        }
    }
}

impl core::error::Error for ModelError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Self::Linalg(e) => Some(e),
            Self::Cv(e) => Some(e),
            Self::AtPoint { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}

impl From<LinalgError> for ModelError {
    fn from(e: LinalgError) -> Self {
        Self::Linalg(e)
    }
}

impl From<CvError> for ModelError {
    fn from(e: CvError) -> Self {
        Self::Cv(e)
    }
}
