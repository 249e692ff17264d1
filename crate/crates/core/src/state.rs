//! Pure states, density matrices and the two-qubit basis convention.
//!
//! Every single-qubit matrix is written in the order `(|1>, |0>)`, excited
//! state first. Two-qubit matrices use the Kronecker product of that order
//! with qubit A as the slow index, which gives
//!
//! | index | ket    |
//! |-------|--------|
//! | 0     | `|11>` |
//! | 1     | `|10>` |
//! | 2     | `|01>` |
//! | 3     | `|00>` |
//!
//! Element `rho[(0, 3)]` is therefore the `|11><00|` coherence.

use num_complex::Complex64;

use crate::numerics::{hermitian_eigenvalues, ComplexMatrix};
use crate::{Error, Result};

/// Single-qubit index of the excited state `|1>`.
pub const EXCITED: usize = 0;
/// Single-qubit index of the ground state `|0>`.
pub const GROUND: usize = 1;

/// Default tolerances for [`DensityMatrix::new`].
pub const TRACE_TOL: f64 = 1e-12;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-10;

/// The excited-first two-qubit product basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoQubitBasis;

impl TwoQubitBasis {
    pub const LABELS: [&'static str; 4] = ["|11>", "|10>", "|01>", "|00>"];

    /// Joint index of the product ket `|a b>`, with `a`, `b` in `{0, 1}` as
    /// occupation bits (1 = excited).
    pub fn index(a: u8, b: u8) -> usize {
        assert!(a <= 1 && b <= 1, "qubit bits must be 0 or 1");
        2 * (1 - a as usize) + (1 - b as usize)
    }

    /// Occupation bits `(a, b)` of a joint index.
    pub fn bits(index: usize) -> (u8, u8) {
        assert!(index < 4, "two-qubit index out of range");
        ((1 - index / 2) as u8, (1 - index % 2) as u8)
    }
}

/// State vector; normalisation is checked where it matters, not on construction.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

fn check_alpha(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Validation(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    Ok((1.0 - alpha * alpha).max(0.0).sqrt())
}

/// `alpha |01> + beta |10>` with `beta = sqrt(1 - alpha^2) e^{i delta}`.
pub fn make_phi(alpha: f64, delta: f64) -> Result<PureState> {
    let beta = check_alpha(alpha)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 4];
    amps[TwoQubitBasis::index(0, 1)] = Complex64::new(alpha, 0.0);
    amps[TwoQubitBasis::index(1, 0)] = Complex64::from_polar(beta, delta);
    Ok(PureState::new(amps))
}

/// `alpha |00> + beta |11>` with `beta = sqrt(1 - alpha^2) e^{i delta}`.
pub fn make_psi(alpha: f64, delta: f64) -> Result<PureState> {
    let beta = check_alpha(alpha)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 4];
    amps[TwoQubitBasis::index(0, 0)] = Complex64::new(alpha, 0.0);
    amps[TwoQubitBasis::index(1, 1)] = Complex64::from_polar(beta, delta);
    Ok(PureState::new(amps))
}

/// `fidelity |B><B| + (1 - fidelity) / 4 * I` around `|B> = (|01> + |10>) / sqrt 2`.
pub fn make_werner(fidelity: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&fidelity) {
        return Err(Error::Validation(format!(
            "Werner fidelity must lie in [0, 1], got {fidelity}"
        )));
    }
    let bell = make_phi(std::f64::consts::FRAC_1_SQRT_2, 0.0)?;
    let projector = ComplexMatrix::outer(bell.amplitudes(), bell.amplitudes());
    let mixed = ComplexMatrix::identity(4).scale(Complex64::new(0.25 * (1.0 - fidelity), 0.0));
    let m = &projector.scale(Complex64::new(fidelity, 0.0)) + &mixed;
    Ok(DensityMatrix { matrix: m })
}

/// `|s><s|`. Fails if `s` is not normalised to within `1e-9`.
pub fn pure_to_density(s: &PureState) -> Result<DensityMatrix> {
    let norm = s.norm_sqr();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Validation(format!(
            "state is not normalised: <s|s> = {norm}"
        )));
    }
    Ok(DensityMatrix {
        matrix: ComplexMatrix::outer(s.amplitudes(), s.amplitudes()),
    })
}

/// A square complex matrix interpreted as a quantum state.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates trace, hermiticity and positivity with the default tolerances.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Self::with_tolerances(matrix, TRACE_TOL, HERMITIAN_TOL, POSITIVITY_TOL)
    }

    pub fn with_tolerances(
        matrix: ComplexMatrix,
        trace_tol: f64,
        herm_tol: f64,
        pos_tol: f64,
    ) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::dimension(
                "non-empty square matrix",
                format!("{}x{}", matrix.rows(), matrix.cols()),
            ));
        }
        if !matrix.is_finite() {
            return Err(Error::Validation(
                "density matrix has non-finite entries".into(),
            ));
        }
        let rho = Self { matrix };
        let report = validate(&rho);
        if report.trace_deviation > trace_tol {
            return Err(Error::Validation(format!(
                "trace deviates from 1 by {:e}",
                report.trace_deviation
            )));
        }
        if report.hermiticity_deviation > herm_tol {
            return Err(Error::Validation(format!(
                "matrix is not hermitian (deviation {:e})",
                report.hermiticity_deviation
            )));
        }
        if report.min_eigenvalue < -pos_tol {
            return Err(Error::Validation(format!(
                "matrix is not positive semidefinite (min eigenvalue {:e})",
                report.min_eigenvalue
            )));
        }
        Ok(rho)
    }

    /// Wraps a matrix without any checks. Use [`validate`] to inspect it.
    pub fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Entry `rho[(r, c)]` in the excited-first basis.
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.matrix[(r, c)]
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.kron(&other.matrix),
        }
    }

    /// `U rho U^dagger`.
    pub fn unitary_conjugate(&self, u: &ComplexMatrix) -> Result<DensityMatrix> {
        Ok(DensityMatrix {
            matrix: self.matrix.conjugate_by(u)?,
        })
    }

    /// Exchanges qubits A and B of a two-qubit state.
    pub fn swap_qubits(&self) -> Result<DensityMatrix> {
        if self.dim() != 4 {
            return Err(Error::dimension(4, self.dim()));
        }
        let perm = [0usize, 2, 1, 3];
        Ok(DensityMatrix {
            matrix: ComplexMatrix::from_fn(4, 4, |r, c| self.matrix[(perm[r], perm[c])]),
        })
    }
}

/// Deviations of a matrix from the density-matrix conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// `|tr rho - 1|`
    pub trace_deviation: f64,
    /// largest `|rho_ij - conj(rho_ji)|`
    pub hermiticity_deviation: f64,
    /// smallest eigenvalue of the hermitian part
    pub min_eigenvalue: f64,
}

impl ValidationReport {
    pub fn is_physical(&self, trace_tol: f64, herm_tol: f64, pos_tol: f64) -> bool {
        self.trace_deviation <= trace_tol
            && self.hermiticity_deviation <= herm_tol
            && self.min_eigenvalue >= -pos_tol
    }
}

pub fn validate(rho: &DensityMatrix) -> ValidationReport {
    let m = rho.matrix();
    let min_eigenvalue = hermitian_eigenvalues(m)
        .ok()
        .and_then(|v| v.first().copied())
        .unwrap_or(f64::NAN);
    ValidationReport {
        trace_deviation: (m.trace() - Complex64::new(1.0, 0.0)).norm(),
        hermiticity_deviation: m.hermiticity_deviation(),
        min_eigenvalue,
    }
}
