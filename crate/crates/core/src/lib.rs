//! Stationary Gaussian-state analysis of a cavity / membrane / LC-circuit system.
//!
//! The crate is `no_std` with `alloc`. It is organized bottom-up:
//!
//! * [`linalg`] dense small-matrix kernels (real Schur form, eigenvalues, LU,
//!   Lyapunov solvers, symmetric eigenvalues).
//! * [`cvstate`] covariance-matrix analysis: partial transposition, symplectic
//!   eigenvalues, logarithmic negativity, Duan sum, mode occupations.
//! * [`model`] drift and diffusion matrices of the linearized Langevin
//!   dynamics, the semiclassical steady state, stability tests and the
//!   per-point diagnostics that the sweep front end consumes.
#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

mod math;

pub mod cvstate;
pub mod linalg;
pub mod model;

pub use cvstate::{CovarianceMatrix, CvError, Mode};
pub use linalg::{LinalgError, Matrix, Spectrum};
pub use model::{
    analyze_point, DriveParams, EffectiveParams, ModelError, OccupationMode, PointResult,
    SemiclassicalState,
};
