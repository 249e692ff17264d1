//! Closed-form evolution of a two-qubit density matrix when both qubits see
//! identical, independent amplitude damping with survival probability `P`.
//!
//! With 1-based labels `1 = |11>, 2 = |10>, 3 = |01>, 4 = |00>`:
//!
//! ```text
//! r11 -> r11 P^2
//! r22 -> r22 P + r11 P (1 - P)
//! r33 -> r33 P + r11 P (1 - P)
//! r44 -> 1 - (r11 + r22 + r33)
//! r12 -> r12 P^{3/2}          r13 -> r13 P^{3/2}
//! r14 -> r14 P                r23 -> r23 P
//! r24 -> sqrt(P) [r24 + r13 (1 - P)]
//! r34 -> sqrt(P) [r34 + r12 (1 - P)]
//! ```
//!
//! and the lower triangle by hermiticity. These formulas are derived
//! independently of the tensor machinery in [`crate::channel`], which makes
//! them a useful oracle for it; see [`crosscheck`].

use num_complex::Complex64;

use crate::channel::product_extend;
use crate::damping::{clamp_probability, damping_channel};
use crate::numerics::ComplexMatrix;
use crate::state::{DensityMatrix, HERMITIAN_TOL, POSITIVITY_TOL};
use crate::{Error, Result};

/// Tolerance used to accept input states.
const INPUT_TRACE_TOL: f64 = 1e-10;

fn check_input(rho0: &DensityMatrix) -> Result<()> {
    if rho0.dim() != 4 {
        return Err(Error::dimension(4, rho0.dim()));
    }
    let report = crate::state::validate(rho0);
    if !report.is_physical(INPUT_TRACE_TOL, HERMITIAN_TOL, POSITIVITY_TOL) {
        return Err(Error::Validation(format!(
            "initial state is not a valid density matrix: {report:?}"
        )));
    }
    Ok(())
}

/// All sixteen elements at survival probability `p`.
pub fn evolve_closed_form(rho0: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    check_input(rho0)?;
    let p = clamp_probability(p)?;
    Ok(evolve_unchecked(rho0.matrix(), p))
}

fn evolve_unchecked(m: &ComplexMatrix, p: f64) -> DensityMatrix {
    let q = 1.0 - p;
    let sp = p.sqrt();
    let p32 = p * sp;
    // 0-based: 0 = |11>, 1 = |10>, 2 = |01>, 3 = |00>
    let r = |i: usize, j: usize| m[(i, j)];

    let r11 = r(0, 0).re * p * p;
    let r22 = r(1, 1).re * p + r(0, 0).re * p * q;
    let r33 = r(2, 2).re * p + r(0, 0).re * p * q;
    let r44 = 1.0 - (r11 + r22 + r33);

    let mut out = ComplexMatrix::zeros(4, 4);
    out[(0, 0)] = Complex64::new(r11, 0.0);
    out[(1, 1)] = Complex64::new(r22, 0.0);
    out[(2, 2)] = Complex64::new(r33, 0.0);
    out[(3, 3)] = Complex64::new(r44, 0.0);

    let upper = [
        ((0, 1), r(0, 1) * p32),
        ((0, 2), r(0, 2) * p32),
        ((0, 3), r(0, 3) * p),
        ((1, 2), r(1, 2) * p),
        ((1, 3), (r(1, 3) + r(0, 2) * q) * sp),
        ((2, 3), (r(2, 3) + r(0, 1) * q) * sp),
    ];
    for ((i, j), v) in upper {
        out[(i, j)] = v;
        out[(j, i)] = v.conj();
    }
    DensityMatrix::from_matrix_unchecked(out)
}

/// Two-qubit state with non-zero entries only on the diagonal and the anti-diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    /// Populations of `|11>, |10>, |01>, |00>`.
    pub diag: [f64; 4],
    /// `rho[(0, 3)]`, the `|11><00|` coherence.
    pub rho14: Complex64,
    /// `rho[(1, 2)]`, the `|10><01|` coherence.
    pub rho23: Complex64,
}

impl XState {
    /// Extracts the X part of `rho`. Fails if any other off-diagonal entry
    /// exceeds `tol` in magnitude.
    pub fn from_density(rho: &DensityMatrix, tol: f64) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::dimension(4, rho.dim()));
        }
        for i in 0..4 {
            for j in 0..4 {
                let on_x = i == j || i + j == 3;
                if !on_x && rho.get(i, j).norm() > tol {
                    return Err(Error::Validation(format!(
                        "element ({i}, {j}) breaks the X pattern"
                    )));
                }
            }
        }
        Ok(Self {
            diag: [0, 1, 2, 3].map(|k| rho.get(k, k).re),
            rho14: rho.get(0, 3),
            rho23: rho.get(1, 2),
        })
    }

    pub fn embed(&self) -> DensityMatrix {
        let mut m = ComplexMatrix::diag(&self.diag.map(|d| Complex64::new(d, 0.0)));
        m[(0, 3)] = self.rho14;
        m[(3, 0)] = self.rho14.conj();
        m[(1, 2)] = self.rho23;
        m[(2, 1)] = self.rho23.conj();
        DensityMatrix::from_matrix_unchecked(m)
    }

    /// Positive semidefinite with unit trace, checked on the two 2x2 blocks.
    pub fn is_valid(&self, tol: f64) -> bool {
        let [a, b, c, d] = self.diag;
        let trace_ok = (a + b + c + d - 1.0).abs() <= tol;
        let diag_ok = self.diag.iter().all(|&x| x >= -tol);
        let outer = a * d - self.rho14.norm_sqr() >= -tol;
        let inner = b * c - self.rho23.norm_sqr() >= -tol;
        trace_ok && diag_ok && outer && inner
    }
}

/// The X-state restriction of [`evolve_closed_form`]. Entries outside the X
/// pattern are not represented, so they stay exactly zero.
pub fn evolve_x_state(x0: &XState, p: f64) -> Result<XState> {
    if !x0.is_valid(INPUT_TRACE_TOL) {
        return Err(Error::Validation(format!("invalid X state: {x0:?}")));
    }
    let p = clamp_probability(p)?;
    let q = 1.0 - p;
    let [r11, r22, r33, _] = x0.diag;
    let n11 = r11 * p * p;
    let n22 = r22 * p + r11 * p * q;
    let n33 = r33 * p + r11 * p * q;
    Ok(XState {
        diag: [n11, n22, n33, 1.0 - (n11 + n22 + n33)],
        rho14: x0.rho14 * p,
        rho23: x0.rho23 * p,
    })
}

/// Evolves `rho0` through the product extension of two damping channels.
pub fn evolve_product_path(rho0: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
    let single = damping_channel(p)?;
    let joint = product_extend(&[single.map.clone(), single.map])?;
    joint.apply(rho0)
}

/// Largest elementwise difference between the closed form and the
/// product-extension path.
pub fn crosscheck(rho0: &DensityMatrix, p: f64) -> Result<f64> {
    let closed = evolve_closed_form(rho0, p)?;
    let generic = evolve_product_path(rho0, p)?;
    Ok(closed.matrix().max_abs_diff(generic.matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{make_phi, make_psi, make_werner, pure_to_density};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn psi_third() -> DensityMatrix {
        pure_to_density(&make_psi((1.0f64 / 3.0).sqrt(), 0.0).unwrap()).unwrap()
    }

    #[test]
    fn p_one_is_identity() {
        let rho = psi_third();
        let out = evolve_closed_form(&rho, 1.0).unwrap();
        assert!(out.matrix().approx_eq(rho.matrix(), 1e-16));
    }

    #[test]
    fn p_zero_decays_to_ground() {
        let out = evolve_closed_form(&psi_third(), 0.0).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i, j) == (3, 3) { 1.0 } else { 0.0 };
                assert!((out.get(i, j) - Complex64::new(want, 0.0)).norm() < 1e-16);
            }
        }
    }

    #[test]
    fn psi_third_at_half() {
        let out = evolve_closed_form(&psi_third(), 0.5).unwrap();
        let diag = [1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0, 0.5];
        for (k, want) in diag.iter().enumerate() {
            assert!((out.get(k, k).re - want).abs() < 1e-15, "element {k}");
        }
        assert!((out.get(0, 3).re - 2f64.sqrt() / 3.0 * 0.5).abs() < 1e-15);
    }

    #[test]
    fn bell_phi_x_state() {
        let rho = pure_to_density(&make_phi(FRAC_1_SQRT_2, 0.0).unwrap()).unwrap();
        let x = XState::from_density(&rho, 0.0).unwrap();
        let out = evolve_x_state(&x, 0.5).unwrap();
        assert!((out.rho23.re - 0.25).abs() < 1e-15);
        for (got, want) in out.diag.iter().zip([0.0, 0.25, 0.25, 0.5]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn bell_psi_coherence_is_half_p() {
        let rho = pure_to_density(&make_psi(FRAC_1_SQRT_2, 0.0).unwrap()).unwrap();
        let x = XState::from_density(&rho, 0.0).unwrap();
        for p in [0.0, 0.2, 0.7, 1.0] {
            let out = evolve_x_state(&x, p).unwrap();
            assert!((out.rho14.re - 0.5 * p).abs() < 1e-15);
        }
    }

    #[test]
    fn werner_unchanged_at_p_one() {
        let w = XState::from_density(&make_werner(1.0).unwrap(), 0.0).unwrap();
        assert_eq!(evolve_x_state(&w, 1.0).unwrap(), w);
    }

    #[test]
    fn x_state_path_matches_full_matrix() {
        let rho = make_werner(0.7).unwrap();
        let x = XState::from_density(&rho, 0.0).unwrap();
        for p in [0.0, 0.3, 0.9] {
            let full = evolve_closed_form(&rho, p).unwrap();
            let fast = evolve_x_state(&x, p).unwrap().embed();
            assert!(full.matrix().approx_eq(fast.matrix(), 1e-16));
        }
    }

    #[test]
    fn non_x_input_is_rejected_by_x_extraction() {
        let rho = pure_to_density(&crate::state::PureState::new(vec![
            Complex64::new(0.5, 0.0);
            4
        ]))
        .unwrap();
        assert!(XState::from_density(&rho, 1e-12).is_err());
    }

    #[test]
    fn invalid_inputs() {
        let bad = DensityMatrix::from_matrix_unchecked(ComplexMatrix::identity(4));
        assert!(matches!(
            evolve_closed_form(&bad, 0.5),
            Err(Error::Validation(_))
        ));
        assert!(evolve_closed_form(&psi_third(), 1.5).is_err());
        let one_qubit = DensityMatrix::from_matrix_unchecked(ComplexMatrix::identity(2));
        assert!(matches!(
            evolve_closed_form(&one_qubit, 0.5),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn crosscheck_on_named_states() {
        for rho in [psi_third(), make_werner(0.4).unwrap()] {
            for p in [0.0, 0.3, 0.7, 1.0] {
                assert!(crosscheck(&rho, p).unwrap() < 1e-15);
            }
        }
    }
}
