use crate::{Error, Result};

/// Samples of a real vector-valued solution on a uniform grid.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn last(&self) -> Option<(f64, &[f64])> {
        Some((*self.times.last()?, self.states.last()?.as_slice()))
    }
}

/// Classical fourth-order Runge-Kutta with a fixed step.
///
/// `deriv(t, y, dy)` writes `dy/dt` into `dy`. The grid is `t0 + k * h'` where
/// `h' <= h` is chosen so the last node lands exactly on `t1`; node times are
/// computed from the index rather than accumulated.
pub fn ode_rk4<F>(mut deriv: F, y0: &[f64], t0: f64, t1: f64, h: f64) -> Result<Trajectory>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidStep(h));
    }
    if !(t1 > t0) {
        return Err(Error::Input(format!(
            "integration interval [{t0}, {t1}] is empty"
        )));
    }
    let (n, h) = super::uniform_steps(t1 - t0, h);
    let dim = y0.len();

    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    times.push(t0);
    states.push(y0.to_vec());

    let mut y = y0.to_vec();
    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    let check = |k: &[f64], t: f64| -> Result<()> {
        if k.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite { at: t })
        }
    };

    for step in 0..n {
        let t = t0 + step as f64 * h;

        deriv(t, &y, &mut k1);
        check(&k1, t)?;

        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        deriv(t + 0.5 * h, &tmp, &mut k2);
        check(&k2, t + 0.5 * h)?;

        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        deriv(t + 0.5 * h, &tmp, &mut k3);
        check(&k3, t + 0.5 * h)?;

        for i in 0..dim {
            tmp[i] = y[i] + h * k3[i];
        }
        deriv(t + h, &tmp, &mut k4);
        check(&k4, t + h)?;

        for i in 0..dim {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        times.push(if step + 1 == n {
            t1
        } else {
            t0 + (step + 1) as f64 * h
        });
        states.push(y.clone());
    }

    Ok(Trajectory { times, states })
}
