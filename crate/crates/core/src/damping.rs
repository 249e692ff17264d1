//! Single-qubit amplitude damping parameterised by the survival probability `p`.
//!
//! In the `(|1>, |0>)` basis the channel sends
//!
//! ```text
//! [[r11, r10], [r01, r00]]  ->  [[r11 p, r10 sqrt(p)], [r01 sqrt(p), r00 + r11 (1 - p)]]
//! ```

use num_complex::Complex64;

use crate::channel::{from_kraus, DynamicalMap, KrausSet};
use crate::kernel::{MemoryFunction, MemoryMethod, ReservoirSpec};
use crate::numerics::ComplexMatrix;
use crate::state::{EXCITED, GROUND};
use crate::{Error, Result};

/// Values of `p` this far outside `[0, 1]` are clamped; anything further is an error.
pub const CLAMP_WINDOW: f64 = 1e-9;

/// The damping channel at a fixed `p`, in Kraus and tensor form.
#[derive(Debug, Clone)]
pub struct DampingSnapshot {
    pub p: f64,
    pub kraus: KrausSet,
    pub map: DynamicalMap,
}

pub(crate) fn clamp_probability(p: f64) -> Result<f64> {
    if !(-CLAMP_WINDOW..=1.0 + CLAMP_WINDOW).contains(&p) {
        return Err(Error::Validation(format!(
            "survival probability must lie in [0, 1], got {p}"
        )));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Kraus pair `K0 = diag(sqrt p, 1)`, `K1 = sqrt(1 - p) |0><1|`.
pub fn damping_channel(p: f64) -> Result<DampingSnapshot> {
    let p = clamp_probability(p)?;
    let mut k0 = ComplexMatrix::zeros(2, 2);
    k0[(EXCITED, EXCITED)] = Complex64::new(p.sqrt(), 0.0);
    k0[(GROUND, GROUND)] = Complex64::new(1.0, 0.0);
    let mut k1 = ComplexMatrix::zeros(2, 2);
    k1[(GROUND, EXCITED)] = Complex64::new((1.0 - p).sqrt(), 0.0);

    let kraus = KrausSet::new(vec![k0, k1])?;
    let map = from_kraus(&kraus)?;
    Ok(DampingSnapshot { p, kraus, map })
}

/// `damping_channel(P(t))` with `P` from the given method.
pub fn channel_at_time(
    spec: &ReservoirSpec,
    t: f64,
    method: MemoryMethod,
) -> Result<DampingSnapshot> {
    let p = MemoryFunction::new(*spec, method).eval(t)?;
    damping_channel(p)
}
