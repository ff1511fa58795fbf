//! Dense small-matrix kernels.
//!
//! Everything here works on runtime-sized [`Matrix`] values but is tuned for
//! the sizes the model needs: 4 and 6 for covariance and drift matrices, 36
//! for the Kronecker-form Lyapunov oracle.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

mod lu;
mod lyapunov;
mod matrix;
mod schur;
mod symmetric;

pub use lu::{solve_linear, Lu};
pub use lyapunov::{lyapunov_residual, solve_lyapunov, solve_lyapunov_kronecker};
pub use matrix::Matrix;
pub use schur::{eigenvalues, real_schur, RealSchur, DEFLATION_TOL};
pub use symmetric::{hermitian_min_eigenvalue, symmetric_eigenvalues};

#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    NotSquare { rows: usize, cols: usize },
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    NonFinite,
    NotSymmetric { asymmetry: f64 },
    /// Iterative kernel hit its iteration cap.
    NoConvergence { iterations: usize },
    /// Pivot magnitude below the rank threshold, or condition estimate too large.
    Singular { pivot: f64 },
    /// Drift matrix has an eigenvalue with non-negative real part.
    Unstable { max_real: f64 },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotSquare { rows, cols } => write!(f, "matrix is not square ({rows}x{cols})"),
            Self::DimensionMismatch { expected, found } => write!(
                f,
                "dimension mismatch: expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Self::NonFinite => f.write_str("matrix has non-finite entries"),
            Self::NotSymmetric { asymmetry } => {
                write!(f, "matrix is not symmetric (max |m_ij - m_ji| = {asymmetry:e})")
            }
            Self::NoConvergence { iterations } => {
                write!(f, "iteration did not converge after {iterations} iterations")
            }
            Self::Singular { pivot } => {
                write!(f, "matrix is singular or ill-conditioned (pivot {pivot:e})")
            }
            Self::Unstable { max_real } => write!(
                f,
                "drift matrix is not Hurwitz stable (max real part {max_real:e})"
            ),
        }
    }
}

impl core::error::Error for LinalgError {}

pub(crate) fn require_square(m: &Matrix) -> Result<usize, LinalgError> {
    if !m.is_square() || m.rows() == 0 {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    Ok(m.rows())
}

/// Eigenvalues of a real matrix, in the order they appear on the diagonal of
/// the real Schur form. Complex eigenvalues come in adjacent conjugate pairs,
/// positive imaginary part first.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.values.iter()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.values
    }

    /// Largest real part; `-inf` for an empty spectrum.
    pub fn max_real(&self) -> f64 {
        self.values
            .iter()
            .fold(f64::NEG_INFINITY, |m, z| m.max(z.re))
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    /// Eigenvalues sorted by (real, imaginary) part.
    pub fn sorted(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }
}
