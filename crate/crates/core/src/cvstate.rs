//! Gaussian-state analysis on quadrature covariance matrices.
//!
//! Conventions: quadratures are ordered `(X, Y, x, p, q, φ)` for the
//! three-mode state (cavity, mechanics, LC circuit) and `(x, p, q, φ)` for the
//! mechanics/LC pair. `[x, p] = i`, so the vacuum variance is 1/2, a physical
//! state satisfies `C + iΩ/2 ⪰ 0`, and every threshold below (ν̃ < 1/2,
//! Duan bound 2) is stated in that convention.

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use crate::linalg::{eigenvalues, hermitian_min_eigenvalue, LinalgError, Matrix};
use crate::math;

/// Absolute symmetry tolerance (scaled by `1 + max|c_ij|`).
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Eigenvalue slack for the `C + iΩ/2 ⪰ 0` test.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Indices of `(x, p, q, φ)` inside the three-mode ordering.
const MECH_LC: [usize; 4] = [2, 3, 4, 5];

#[derive(Debug, Clone, PartialEq)]
pub enum CvError {
    Dimension { expected: usize, found: (usize, usize) },
    NotSymmetric { asymmetry: f64 },
    NegativeVariance { index: usize, value: f64 },
    UnknownMode(String),
    Linalg(LinalgError),
}

impl fmt::Display for CvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Dimension { expected, found } => write!(
                f,
                "expected a {expected}x{expected} covariance matrix, found {}x{}",
                found.0, found.1
            ),
            Self::NotSymmetric { asymmetry } => {
                write!(f, "covariance matrix is not symmetric ({asymmetry:e})")
            }
            Self::NegativeVariance { index, value } => {
                write!(f, "negative variance {value:e} at diagonal index {index}")
            }
            Self::UnknownMode(s) => write!(
                f,
                "unknown mode `{s}` (expected optical, mechanical or electrical)"
            ),
            Self::Linalg(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CvError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Self::Linalg(e) => Some(e),
            _ => None,
        }
    }
}

impl From<LinalgError> for CvError {
    fn from(e: LinalgError) -> Self {
        Self::Linalg(e)
    }
}

fn check_symmetric(m: &Matrix) -> Result<(), CvError> {
    let asym = m.asymmetry();
    if asym > SYMMETRY_TOL * (1.0 + m.max_abs()) {
        return Err(CvError::NotSymmetric { asymmetry: asym });
    }
    Ok(())
}

fn check_dim(m: &Matrix, n: usize) -> Result<(), CvError> {
    if m.rows() != n || m.cols() != n {
        return Err(CvError::Dimension {
            expected: n,
            found: (m.rows(), m.cols()),
        });
    }
    Ok(())
}

/// Validated 4x4 or 6x6 symmetric covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix(Matrix);

impl CovarianceMatrix {
    pub fn new(m: Matrix) -> Result<Self, CvError> {
        if !(m.is_square() && (m.rows() == 4 || m.rows() == 6)) {
            return Err(CvError::Dimension {
                expected: if m.rows() <= 4 { 4 } else { 6 },
                found: (m.rows(), m.cols()),
            });
        }
        if !m.is_finite() {
            return Err(LinalgError::NonFinite.into());
        }
        check_symmetric(&m)?;
        for i in 0..m.rows() {
            if m[(i, i)] < 0.0 {
                return Err(CvError::NegativeVariance {
                    index: i,
                    value: m[(i, i)],
                });
            }
        }
        Ok(Self(m))
    }

    /// `n̄ + 1/2` times the identity on every mode.
    pub fn thermal(occupations: &[f64]) -> Result<Self, CvError> {
        let diag: alloc::vec::Vec<f64> = occupations
            .iter()
            .flat_map(|n| [n + 0.5, n + 0.5])
            .collect();
        Self::new(Matrix::from_diag(&diag))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

impl AsRef<Matrix> for CovarianceMatrix {
    fn as_ref(&self) -> &Matrix {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Optical,
    Mechanical,
    Electrical,
}

impl Mode {
    /// Quadrature indices of this mode in the three-mode ordering.
    pub fn indices(self) -> (usize, usize) {
        match self {
            Mode::Optical => (0, 1),
            Mode::Mechanical => (2, 3),
            Mode::Electrical => (4, 5),
        }
    }
}

impl FromStr for Mode {
    type Err = CvError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "optical" | "cavity" => Ok(Mode::Optical),
            "mechanical" | "m" => Ok(Mode::Mechanical),
            "electrical" | "lc" => Ok(Mode::Electrical),
            other => Err(CvError::UnknownMode(other.into())),
        }
    }
}

/// Block-diagonal symplectic form `⊕ [[0, 1], [-1, 0]]` on `modes` modes.
pub fn symplectic_form(modes: usize) -> Matrix {
    let mut omega = Matrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

/// Mechanics/LC block: rows and columns 3–6 of the three-mode matrix.
pub fn extract_mech_lc(c6: &CovarianceMatrix) -> Result<CovarianceMatrix, CvError> {
    check_dim(c6.matrix(), 6)?;
    Ok(CovarianceMatrix(c6.matrix().principal_submatrix(&MECH_LC)))
}

/// `P C P` with `P = diag(1, -1, 1, 1)`: time reversal of the mechanical mode.
pub fn partial_transpose(c4: &CovarianceMatrix) -> Result<CovarianceMatrix, CvError> {
    check_dim(c4.matrix(), 4)?;
    let mut m = c4.matrix().clone();
    for k in 0..4 {
        if k != 1 {
            m[(1, k)] = -m[(1, k)];
            m[(k, 1)] = -m[(k, 1)];
        }
    }
    Ok(CovarianceMatrix(m))
}

fn det2(m: &Matrix, r: usize, c: usize) -> f64 {
    m[(r, c)] * m[(r + 1, c + 1)] - m[(r, c + 1)] * m[(r + 1, c)]
}

fn det4(m: &Matrix) -> f64 {
    // Laplace expansion along the first two rows.
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let minor = |rows: (usize, usize), cols: (usize, usize)| {
        m[(rows.0, cols.0)] * m[(rows.1, cols.1)] - m[(rows.0, cols.1)] * m[(rows.1, cols.0)]
    };
    let mut det = 0.0;
    for &(a, b) in &pairs {
        let comp: [usize; 2] = {
            let mut rest = [0usize; 2];
            let mut k = 0;
            for j in 0..4 {
                if j != a && j != b {
                    rest[k] = j;
                    k += 1;
                }
            }
            rest
        };
        let sign = if (a + b + 1) % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * minor((0, 1), (a, b)) * minor((2, 3), (comp[0], comp[1]));
    }
    det
}

/// Smallest symplectic eigenvalue of a two-mode (4x4) symmetric matrix, from
/// the invariants `Σ = det A + det B + 2 det C` and `det M`:
/// `ν₋² = (Σ - √(Σ² - 4 det M)) / 2`.
///
/// Applied to a partially transposed matrix, the off-diagonal block changes
/// sign, which gives the familiar `det A + det B - 2 det C` of the untransposed
/// blocks.
pub fn min_symplectic_eigenvalue(m: &Matrix) -> Result<f64, CvError> {
    check_dim(m, 4)?;
    check_symmetric(m)?;
    let sigma = det2(m, 0, 0) + det2(m, 2, 2) + 2.0 * det2(m, 0, 2);
    let det = det4(m);
    let disc = (sigma * sigma - 4.0 * det).max(0.0);
    // Stable form of (σ - √disc)/2 when the square root nearly cancels σ.
    let root = math::sqrt(disc);
    let nu2 = if sigma > 0.0 {
        2.0 * det / (sigma + root)
    } else {
        0.5 * (sigma - root)
    };
    Ok(math::sqrt(nu2.max(0.0)))
}

/// Same quantity as [`min_symplectic_eigenvalue`], taken as the smallest
/// eigenvalue modulus of `Ω₂ M`. `iΩ₂M` and `Ω₂M` share eigenvalue moduli,
/// so a real eigensolver suffices.
pub fn min_symplectic_eigenvalue_spectral(m: &Matrix) -> Result<f64, CvError> {
    check_dim(m, 4)?;
    check_symmetric(m)?;
    let spectrum = eigenvalues(&symplectic_form(2).matmul(m))?;
    Ok(spectrum
        .iter()
        .map(|z| math::hypot(z.re, z.im))
        .fold(f64::INFINITY, f64::min))
}

/// Raw `-ln(2 ν̃₋)`; positive iff the pair is entangled.
fn raw_log_negativity(c4: &CovarianceMatrix) -> Result<f64, CvError> {
    let nu = min_symplectic_eigenvalue(partial_transpose(c4)?.matrix())?;
    Ok(-math::ln(2.0 * nu))
}

/// Logarithmic negativity of a two-mode covariance matrix.
pub fn log_negativity_two_mode(c4: &CovarianceMatrix) -> Result<f64, CvError> {
    Ok(raw_log_negativity(c4)?.max(0.0))
}

/// Mechanics/LC logarithmic negativity `max(0, -ln 2ν̃₋)` of a three-mode state.
pub fn log_negativity(c6: &CovarianceMatrix) -> Result<f64, CvError> {
    log_negativity_two_mode(&extract_mech_lc(c6)?)
}

/// `⟨δX₊²⟩ + ⟨δY₋²⟩` for `X₊ = x + q`, `Y₋ = p - φ`. Below 2 certifies
/// mechanics/LC entanglement.
pub fn duan_sum(c6: &CovarianceMatrix) -> Result<f64, CvError> {
    let c = c6.matrix();
    check_dim(c, 6)?;
    let x_plus = c[(2, 2)] + c[(4, 4)] + 2.0 * c[(2, 4)];
    let y_minus = c[(3, 3)] + c[(5, 5)] - 2.0 * c[(3, 5)];
    Ok(x_plus + y_minus)
}

/// `½(⟨a²⟩ + ⟨b²⟩ - 1)` over the mode's quadrature pair. Not clamped.
pub fn effective_occupation(c6: &CovarianceMatrix, mode: Mode) -> Result<f64, CvError> {
    let c = c6.matrix();
    check_dim(c, 6)?;
    let (a, b) = mode.indices();
    Ok(0.5 * (c[(a, a)] + c[(b, b)] - 1.0))
}

/// Smallest eigenvalue of `C + iΩ/2`. Physical states give a value ≥ 0 up to
/// rounding; compare against `-PHYSICALITY_TOL`.
pub fn physicality_margin(c: &CovarianceMatrix) -> Result<f64, CvError> {
    let modes = c.dim() / 2;
    let half_omega = symplectic_form(modes).scale(0.5);
    Ok(hermitian_min_eigenvalue(c.matrix(), &half_omega)?)
}

pub fn is_physical(c: &CovarianceMatrix) -> Result<bool, CvError> {
    Ok(physicality_margin(c)? >= -PHYSICALITY_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn vacuum(n: usize) -> CovarianceMatrix {
        CovarianceMatrix::new(Matrix::identity(n).scale(0.5)).unwrap()
    }

    #[test]
    fn extract_diagonal() {
        let c6 = CovarianceMatrix::new(Matrix::from_diag(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])).unwrap();
        let c4 = extract_mech_lc(&c6).unwrap();
        assert_eq!(c4.matrix(), &Matrix::from_diag(&[3.0, 4.0, 5.0, 6.0]));
    }

    #[test]
    fn extract_marker_position() {
        let mut m = Matrix::identity(6);
        m[(2, 4)] = 0.125;
        m[(4, 2)] = 0.125;
        let c4 = extract_mech_lc(&CovarianceMatrix::new(m).unwrap()).unwrap();
        assert_eq!(c4.matrix()[(0, 2)], 0.125);
        assert_eq!(c4.matrix()[(2, 0)], 0.125);
    }

    #[test]
    fn extract_rejects_wrong_dim() {
        assert!(matches!(
            extract_mech_lc(&vacuum(4)),
            Err(CvError::Dimension { expected: 6, .. })
        ));
    }

    #[test]
    fn partial_transpose_cases() {
        let diag = CovarianceMatrix::new(Matrix::from_diag(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        assert_eq!(partial_transpose(&diag).unwrap(), diag);

        let mut m = Matrix::identity(4);
        m[(1, 2)] = 0.3;
        m[(2, 1)] = 0.3;
        let c = CovarianceMatrix::new(m).unwrap();
        let pt = partial_transpose(&c).unwrap();
        assert_eq!(pt.matrix()[(1, 2)], -0.3);
        assert_eq!(partial_transpose(&pt).unwrap(), c);
        assert!(partial_transpose(&vacuum(6)).is_err());
    }

    #[test]
    fn vacuum_and_thermal_symplectic() {
        let v = vacuum(4);
        assert_abs_diff_eq!(min_symplectic_eigenvalue(v.matrix()).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(
            min_symplectic_eigenvalue_spectral(v.matrix()).unwrap(),
            0.5,
            epsilon = 1e-14
        );
        let th = CovarianceMatrix::thermal(&[3.0, 1.25]).unwrap();
        assert_abs_diff_eq!(min_symplectic_eigenvalue(th.matrix()).unwrap(), 1.75, epsilon = 1e-13);
        assert_abs_diff_eq!(
            min_symplectic_eigenvalue_spectral(th.matrix()).unwrap(),
            1.75,
            epsilon = 1e-13
        );
    }

    #[test]
    fn symplectic_rejects_asymmetric() {
        let mut m = Matrix::identity(4);
        m[(0, 3)] = 1e-3;
        assert!(matches!(
            min_symplectic_eigenvalue(&m),
            Err(CvError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn two_mode_squeezed_vacuum() {
        // TMSV with squeezing r: E_N = 2r.
        let r: f64 = 0.4;
        let (ch, sh) = (libm::cosh(2.0 * r) / 2.0, libm::sinh(2.0 * r) / 2.0);
        let m = Matrix::from_rows(&[
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ]);
        let c4 = CovarianceMatrix::new(m).unwrap();
        assert_abs_diff_eq!(log_negativity_two_mode(&c4).unwrap(), 2.0 * r, epsilon = 1e-12);
    }

    #[test]
    fn separable_states_have_zero_negativity() {
        let th = CovarianceMatrix::thermal(&[0.0, 208.0, 20.0]).unwrap();
        assert_eq!(log_negativity(&th).unwrap(), 0.0);
        assert_eq!(log_negativity(&vacuum(6)).unwrap(), 0.0);
    }

    #[test]
    fn duan_reference_values() {
        assert_eq!(duan_sum(&vacuum(6)).unwrap(), 2.0);
        let (nm, nlc) = (3.0, 7.5);
        let th = CovarianceMatrix::thermal(&[0.0, nm, nlc]).unwrap();
        assert_abs_diff_eq!(duan_sum(&th).unwrap(), 2.0 + 2.0 * (nm + nlc), epsilon = 1e-12);
        assert!(duan_sum(&vacuum(4)).is_err());
    }

    #[test]
    fn occupations() {
        let th = CovarianceMatrix::thermal(&[0.25, 3.0, 7.5]).unwrap();
        assert_eq!(effective_occupation(&vacuum(6), Mode::Mechanical).unwrap(), 0.0);
        assert_abs_diff_eq!(effective_occupation(&th, Mode::Optical).unwrap(), 0.25);
        assert_abs_diff_eq!(effective_occupation(&th, Mode::Mechanical).unwrap(), 3.0);
        assert_abs_diff_eq!(effective_occupation(&th, Mode::Electrical).unwrap(), 7.5);
        assert!(matches!(
            "phonon".parse::<Mode>(),
            Err(CvError::UnknownMode(_))
        ));
    }

    #[test]
    fn physicality() {
        assert!(is_physical(&vacuum(6)).unwrap());
        let squeezed_too_much = CovarianceMatrix::new(Matrix::from_diag(&[0.1, 0.5, 0.5, 0.5])).unwrap();
        assert!(!is_physical(&squeezed_too_much).unwrap());
    }

    #[test]
    fn rejects_invalid_covariance() {
        assert!(CovarianceMatrix::new(Matrix::identity(5)).is_err());
        assert!(matches!(
            CovarianceMatrix::new(Matrix::from_diag(&[1.0, -1.0, 1.0, 1.0])),
            Err(CvError::NegativeVariance { index: 1, .. })
        ));
    }
}
