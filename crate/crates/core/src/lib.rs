//! Entanglement dynamics of independent qubits under local, non-Markovian
//! amplitude damping.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: dense complex matrices, a Hessenberg/QR eigensolver, a
//!   fixed-step RK4 integrator and a trapezoidal Volterra solver.
//! * [`state`]: pure states and density matrices in the excited-first
//!   two-qubit basis `|11>, |10>, |01>, |00>`.
//! * [`channel`]: single-subsystem dynamical maps (four-index tensors), their
//!   Kraus form, and the product extension to independent subsystems.
//! * [`kernel`]: the Lorentzian reservoir, its exponential memory kernel and
//!   every way of obtaining the excited-state survival probability `P(t)`.
//! * [`damping`]: the single-qubit amplitude-damping channel for a given `P`.
//! * [`two_qubit`]: closed-form evolution of all sixteen two-qubit elements,
//!   used as an oracle against the generic product path.
//! * [`entanglement`]: Wootters concurrence and sudden-death/revival detection.
//!
//! All times are dimensionless `gamma0 * t`.
//!
//! ```
//! use nonmarkov::{entanglement, kernel::ReservoirSpec, state};
//!
//! let reservoir = ReservoirSpec::from_ratio(0.1).unwrap();
//! let p = reservoir.p_closed(1.0);
//! let rho0 = state::pure_to_density(&state::make_phi(0.5f64.sqrt(), 0.0).unwrap()).unwrap();
//! let rho = nonmarkov::two_qubit::evolve_closed_form(&rho0, p).unwrap();
//! let c = entanglement::concurrence(&rho).unwrap();
//! assert!((c - p).abs() < 1e-10);
//! ```

pub mod channel;
pub mod damping;
pub mod entanglement;
mod error;
pub mod kernel;
pub mod numerics;
pub mod sample;
pub mod state;
pub mod two_qubit;

pub use error::{Error, Result};
pub use num_complex::Complex64;
