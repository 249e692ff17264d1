use num_complex::Complex64;

use crate::{Error, Result};

/// Samples of a complex scalar solution on a uniform grid.
#[derive(Debug, Clone)]
pub struct ComplexTrajectory {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl ComplexTrajectory {
    pub fn step(&self) -> f64 {
        self.times.get(1).map_or(0.0, |t| t - self.times[0])
    }
}

/// Solves `g'(t) = -∫_0^t f(t - s) g(s) ds`, `g(0) = g0`, on `[0, t_max]`.
///
/// Both the memory integral and the outer time integral use the trapezoidal
/// rule on a uniform grid of step at most `h`, which makes the scheme second
/// order. The unknown `g_n` appears linearly in its own step and is solved
/// for directly. Kernel samples are taken once at the grid lags `k * h`; the
/// full history is kept, so the cost is O(n^2) time and O(n) memory.
pub fn volterra_product_integration<K>(
    kernel: K,
    g0: Complex64,
    t_max: f64,
    h: f64,
) -> Result<ComplexTrajectory>
where
    K: Fn(f64) -> Complex64,
{
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidStep(h));
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Input(format!("t_max must be positive, got {t_max}")));
    }
    let (n, h) = super::uniform_steps(t_max, h);

    let lags: Vec<Complex64> = (0..=n)
        .map(|k| {
            let tau = k as f64 * h;
            let f = kernel(tau);
            if f.re.is_finite() && f.im.is_finite() {
                Ok(f)
            } else {
                Err(Error::NonFinite { at: tau })
            }
        })
        .collect::<Result<_>>()?;

    let times: Vec<f64> = (0..=n)
        .map(|k| if k == n { t_max } else { k as f64 * h })
        .collect();
    let mut g = Vec::with_capacity(n + 1);
    g.push(g0);

    // I_n = ∫_0^{t_n} f(t_n - s) g(s) ds, with I_0 = 0.
    let mut memory_prev = Complex64::new(0.0, 0.0);
    let diag = 1.0 + 0.25 * h * h * lags[0];
    for step in 1..=n {
        // Trapezoid over s = t_0..t_n, leaving out the unknown endpoint g_n.
        let mut known = 0.5 * lags[step] * g[0];
        for (k, gk) in g.iter().enumerate().take(step).skip(1) {
            known += lags[step - k] * gk;
        }
        known *= h;
        let rhs = g[step - 1] - 0.5 * h * (memory_prev + known);
        let g_new = rhs / diag;
        memory_prev = known + 0.5 * h * lags[0] * g_new;
        g.push(g_new);
    }

    Ok(ComplexTrajectory { times, values: g })
}
