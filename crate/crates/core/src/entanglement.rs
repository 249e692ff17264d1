//! Wootters concurrence and detection of entanglement sudden death and revival.

use num_complex::Complex64;

use crate::numerics::{
    bisect, eigenvalues, hermitian_eigen, hermitian_eigenvalues, ComplexMatrix, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
use crate::state::DensityMatrix;
use crate::two_qubit::XState;
use crate::{Error, Result};

/// Roundoff below this size is dropped from `zeta` eigenvalues.
pub const EIGEN_CLEANUP: f64 = 1e-10;
/// Default threshold under which concurrence counts as zero.
pub const DEFAULT_DEAD_TOL: f64 = 1e-9;

/// `sigma_y (x) sigma_y` in the excited-first basis.
pub fn sigma_yy() -> ComplexMatrix {
    // sigma_y in the (|1>, |0>) order is [[0, i], [-i, 0]]
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let sy = ComplexMatrix::from_rows(&[[zero, i], [-i, zero]]);
    sy.kron(&sy)
}

/// `zeta = rho (sy x sy) rho* (sy x sy)`.
pub fn zeta_matrix(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::dimension(4, rho.dim()));
    }
    let s = sigma_yy();
    let m = rho.matrix();
    Ok(&(&(m * &s) * &m.conj()) * &s)
}

/// Eigenvalues of `zeta`, cleaned of roundoff and sorted in decreasing order.
pub fn zeta_eigenvalues(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let zeta = zeta_matrix(rho)?;
    let result = eigenvalues(&zeta, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    if !result.converged {
        return Err(Error::NotConverged(result.iterations));
    }
    let mut values = [0.0; 4];
    for (slot, z) in values.iter_mut().zip(&result.values) {
        *slot = cleanup(*z);
    }
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

fn cleanup(z: Complex64) -> f64 {
    if z.im.abs() >= EIGEN_CLEANUP {
        // zeta has a real spectrum; a large imaginary part means trouble
        // upstream, keep the modulus rather than hide it.
        return z.norm();
    }
    if z.re < 0.0 && z.re > -EIGEN_CLEANUP {
        0.0
    } else {
        z.re
    }
}

/// Square roots of the `zeta` eigenvalues, decreasing.
///
/// With `rho = W W^H`, `W = V sqrt(D)` from the spectral decomposition, these
/// are the singular values of the symmetric matrix `tau = W^T (sy x sy) W`,
/// read off the Hermitian embedding `[[0, tau], [tau^H, 0]]`. Unlike square
/// roots of [`zeta_eigenvalues`], near-zero values come out at roundoff size.
pub fn wootters_values(rho: &DensityMatrix) -> Result<[f64; 4]> {
    if rho.dim() != 4 {
        return Err(Error::dimension(4, rho.dim()));
    }
    let spectral = hermitian_eigen(rho.matrix())?;
    let w = ComplexMatrix::from_fn(4, 4, |r, c| {
        spectral.vectors[(r, c)] * spectral.values[c].max(0.0).sqrt()
    });
    let tau = &(&w.transpose() * &sigma_yy()) * &w;
    let zero = Complex64::new(0.0, 0.0);
    let embed = ComplexMatrix::from_fn(8, 8, |r, c| match (r < 4, c < 4) {
        (true, false) => tau[(r, c - 4)],
        (false, true) => tau[(c, r - 4)].conj(),
        _ => zero,
    });
    let values = hermitian_eigenvalues(&embed)?;
    Ok([values[7], values[6], values[5], values[4]].map(|x| x.max(0.0)))
}

/// Wootters concurrence `max(0, s1 - s2 - s3 - s4)` from [`wootters_values`].
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    let s = wootters_values(rho)?;
    Ok((s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0))
}

/// Concurrence of an X state: `2 max(0, |r23| - sqrt(r11 r44), |r14| - sqrt(r22 r33))`.
pub fn concurrence_x(x: &XState) -> f64 {
    let [r11, r22, r33, r44] = x.diag.map(|d| d.max(0.0));
    let phi_branch = x.rho23.norm() - (r11 * r44).sqrt();
    let psi_branch = x.rho14.norm() - (r22 * r33).sqrt();
    (2.0 * phi_branch.max(psi_branch)).clamp(0.0, 1.0)
}

/// `max(0, 2 sqrt(1 - alpha^2) P alpha)` for the `alpha |01> + beta |10>` family.
pub fn concurrence_phi(alpha: f64, p: f64) -> f64 {
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    (2.0 * beta * p * alpha).max(0.0)
}

/// `max(0, 2 sqrt(1 - alpha^2) P [alpha - sqrt(1 - alpha^2) (1 - P)])` for the
/// `alpha |00> + beta |11>` family.
pub fn concurrence_psi(alpha: f64, p: f64) -> f64 {
    let beta = (1.0 - alpha * alpha).max(0.0).sqrt();
    (2.0 * beta * p * (alpha - beta * (1.0 - p))).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// Concurrence stays below the dead threshold.
    Death,
    /// Concurrence is back above threshold after a death interval.
    Revival,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub kind: EventKind,
    pub start: f64,
    pub end: f64,
}

impl Event {
    pub fn duration(&self) -> f64 {
        self.end - self.start
    }
}

/// Finds death intervals and the revivals that follow them.
///
/// A death interval is a maximal run of at least two consecutive samples with
/// `C < dead_tol` that contains at least one sample where `C` is exactly zero.
/// Concurrence is clamped at zero, so it vanishes identically across a true
/// death interval, while a touching zero of `P` (a double zero of `C_Phi`, a
/// quartic one of `C_Psi` at `alpha^2 = 1/2`) leaves small positive values
/// around a single instant. A single dead sample is likewise skipped. When `refine` evaluates `C(t)` exactly, interval endpoints are
/// bisected between the bracketing samples; otherwise they sit on the grid.
/// Each death interval that ends before the last sample opens a revival that
/// lasts until the next death interval or the end of the trace.
pub fn detect_events(
    times: &[f64],
    values: &[f64],
    dead_tol: f64,
    refine: Option<&dyn Fn(f64) -> f64>,
) -> Result<Vec<Event>> {
    if times.len() != values.len() {
        return Err(Error::dimension(times.len(), values.len()));
    }
    if times.len() < 2 {
        return Err(Error::Input(
            "event detection needs at least 2 samples".into(),
        ));
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Input(
            "sample times must be strictly increasing".into(),
        ));
    }
    if !(dead_tol > 0.0) {
        return Err(Error::Input(format!(
            "dead tolerance must be positive, got {dead_tol}"
        )));
    }

    let n = times.len();
    let dead: Vec<bool> = values.iter().map(|&c| c < dead_tol).collect();
    let crossing = |a: f64, b: f64| -> f64 {
        match refine {
            Some(f) => bisect(|t| f(t) - dead_tol, a, b, 1e-12).unwrap_or(b),
            None => b,
        }
    };

    let mut deaths = Vec::new();
    let mut k = 0;
    while k < n {
        if !dead[k] {
            k += 1;
            continue;
        }
        let first = k;
        while k + 1 < n && dead[k + 1] {
            k += 1;
        }
        let last = k;
        k += 1;
        if last == first || !values[first..=last].iter().any(|&c| c <= 0.0) {
            continue;
        }
        let start = if first == 0 {
            times[0]
        } else {
            crossing(times[first - 1], times[first])
        };
        let end = if last == n - 1 {
            times[n - 1]
        } else {
            match refine {
                Some(_) => crossing(times[last], times[last + 1]),
                None => times[last],
            }
        };
        deaths.push((start, end, last == n - 1));
    }

    let mut events = Vec::new();
    for (idx, &(start, end, runs_to_end)) in deaths.iter().enumerate() {
        events.push(Event {
            kind: EventKind::Death,
            start,
            end,
        });
        if !runs_to_end {
            let until = deaths.get(idx + 1).map_or(times[n - 1], |d| d.0);
            events.push(Event {
                kind: EventKind::Revival,
                start: end,
                end: until,
            });
        }
    }
    Ok(events)
}

/// Sampled concurrence with its detected events.
#[derive(Debug, Clone)]
pub struct ConcurrenceTrace {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub events: Vec<Event>,
}

impl ConcurrenceTrace {
    pub fn new(
        times: Vec<f64>,
        values: Vec<f64>,
        dead_tol: f64,
        refine: Option<&dyn Fn(f64) -> f64>,
    ) -> Result<Self> {
        if let Some(bad) = values
            .iter()
            .find(|&&c| !(-1e-12..=1.0 + 1e-9).contains(&c))
        {
            return Err(Error::Validation(format!(
                "concurrence {bad} outside [0, 1]"
            )));
        }
        let events = detect_events(&times, &values, dead_tol, refine)?;
        Ok(Self {
            times,
            values,
            events,
        })
    }

    pub fn deaths(&self) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(|e| e.kind == EventKind::Death)
    }

    pub fn revivals(&self) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(|e| e.kind == EventKind::Revival)
    }
}
