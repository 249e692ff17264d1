//! The Lorentzian reservoir and the excited-state survival probability `P(t)`.
//!
//! The reservoir spectral density is
//!
//! ```text
//! J(w) = (1 / 2 pi) * gamma0 * lambda^2 / ((w0 - w)^2 + lambda^2)
//! ```
//!
//! whose Fourier transform is the exponential kernel
//! `f(tau) = (gamma0 lambda / 2) e^{-lambda tau}`. The excited-state amplitude
//! `G` obeys `G'(t) = -∫_0^t f(t - s) G(s) ds`, `G(0) = 1`, and `P = G^2`.
//!
//! Everything here works in units of `gamma0`: times are `gamma0 t` and the
//! only parameter is `lambda / gamma0`.

use num_complex::Complex64;

use crate::numerics::{bisect, ode_rk4, uniform_steps, volterra_product_integration};
use crate::{Error, Result};

/// Default integration step for the numerical methods, in `gamma0 t` units.
pub const DEFAULT_STEP: f64 = 1e-3;

const CRITICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `gamma0 > lambda / 2`: oscillating `P` with isolated zeros.
    Strong,
    /// `gamma0 < lambda / 2`: monotone decay.
    Weak,
    /// `gamma0 = lambda / 2`.
    Critical,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Strong => "strong",
            Regime::Weak => "weak",
            Regime::Critical => "critical",
        }
    }
}

/// Lorentzian reservoir parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirSpec {
    gamma0: f64,
    lambda: f64,
}

impl ReservoirSpec {
    pub fn new(gamma0: f64, lambda: f64) -> Result<Self> {
        if !(gamma0 > 0.0 && gamma0.is_finite()) || !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::Validation(format!(
                "gamma0 and lambda must be positive and finite, got gamma0 = {gamma0}, lambda = {lambda}"
            )));
        }
        Ok(Self { gamma0, lambda })
    }

    /// Reservoir with `gamma0 = 1` and `lambda = ratio`.
    pub fn from_ratio(ratio: f64) -> Result<Self> {
        Self::new(1.0, ratio)
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `lambda / gamma0`.
    pub fn ratio(&self) -> f64 {
        self.lambda / self.gamma0
    }

    /// Reservoir correlation time, `~ 1 / lambda`.
    pub fn tau_b(&self) -> f64 {
        1.0 / self.lambda
    }

    /// Relaxation time, `~ 1 / gamma0`.
    pub fn tau_r(&self) -> f64 {
        1.0 / self.gamma0
    }

    pub fn regime(&self) -> Regime {
        let r = self.ratio();
        if (1.0 - 0.5 * r).abs() <= CRITICAL_TOL {
            Regime::Critical
        } else if r < 2.0 {
            Regime::Strong
        } else {
            Regime::Weak
        }
    }

    /// `d = sqrt(2 gamma0 lambda - lambda^2)` in units of `gamma0` (strong
    /// regime), or `sqrt(lambda^2 - 2 gamma0 lambda)` in the weak regime.
    /// Zero at the critical point.
    pub fn d(&self) -> f64 {
        let r = self.ratio();
        match self.regime() {
            Regime::Strong => (2.0 * r - r * r).sqrt(),
            Regime::Weak => (r * r - 2.0 * r).sqrt(),
            Regime::Critical => 0.0,
        }
    }

    pub fn kernel(&self) -> CorrelationKernel {
        correlation_kernel(self)
    }

    fn require(&self, operation: &'static str, required: Regime) -> Result<()> {
        let actual = self.regime();
        if actual == required {
            Ok(())
        } else {
            Err(Error::Regime {
                operation,
                required: required.name(),
                actual: actual.name(),
                ratio: self.ratio(),
            })
        }
    }

    /// Signed excited-state amplitude `G(t)` from the closed form in
    /// whichever regime applies; `P = G^2`.
    pub fn amplitude(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 1.0;
        }
        let r = self.ratio();
        let d = self.d();
        match self.regime() {
            Regime::Strong => {
                let x = 0.5 * d * t;
                (-0.5 * r * t).exp() * (x.cos() + r / d * x.sin())
            }
            Regime::Weak => {
                // cosh/sinh written as decaying exponentials so that large
                // lambda does not overflow; r - d = 2r / (r + d) avoids cancellation.
                let slow = (-r / (r + d) * t).exp();
                let fast = (-0.5 * (r + d) * t).exp();
                0.5 * ((1.0 + r / d) * slow + (1.0 - r / d) * fast)
            }
            Regime::Critical => (-0.5 * r * t).exp() * (1.0 + 0.5 * r * t),
        }
    }

    /// Closed-form `P(t)` in any regime.
    pub fn p_closed(&self, t: f64) -> f64 {
        let g = self.amplitude(t);
        g * g
    }

    /// `e^{-lambda t} [cos(d t / 2) + (lambda / d) sin(d t / 2)]^2`.
    pub fn p_closed_strong(&self, t: f64) -> Result<f64> {
        self.require("p_closed_strong", Regime::Strong)?;
        Ok(self.p_closed(t))
    }

    /// `e^{-lambda t} [cosh(d t / 2) + (lambda / d) sinh(d t / 2)]^2` with
    /// `d = sqrt(lambda^2 - 2 gamma0 lambda)`.
    pub fn p_closed_weak(&self, t: f64) -> Result<f64> {
        self.require("p_closed_weak", Regime::Weak)?;
        Ok(self.p_closed(t))
    }

    /// Flat-spectrum reference `e^{-gamma0 t}`.
    pub fn p_markov(&self, t: f64) -> f64 {
        p_markov(t)
    }

    /// Zeros `t_n = 2 [n pi - atan(d / lambda)] / d` for `n = 1..=n_max`.
    pub fn p_zeros(&self, n_max: usize) -> Result<Vec<f64>> {
        self.require("p_zeros", Regime::Strong)?;
        if n_max == 0 {
            return Err(Error::Input("n_max must be at least 1".into()));
        }
        let d = self.d();
        let phase = (d / self.ratio()).atan();
        Ok((1..=n_max)
            .map(|n| 2.0 * (n as f64 * std::f64::consts::PI - phase) / d)
            .collect())
    }

    /// Zeros of the closed-form amplitude on `(0, t_max]`, located by a sign
    /// scan with spacing `scan_step` followed by bisection.
    pub fn amplitude_zeros_by_bisection(&self, t_max: f64, scan_step: f64) -> Result<Vec<f64>> {
        if !(scan_step > 0.0) {
            return Err(Error::InvalidStep(scan_step));
        }
        let (n, h) = uniform_steps(t_max, scan_step);
        let mut zeros = Vec::new();
        let mut prev = self.amplitude(0.0);
        for k in 1..=n {
            let t = k as f64 * h;
            let g = self.amplitude(t);
            if g == 0.0 || g.signum() != prev.signum() {
                if let Some(z) = bisect(|t| self.amplitude(t), t - h, t, 1e-13) {
                    zeros.push(z);
                }
            }
            prev = g;
        }
        Ok(zeros)
    }
}

/// `e^{-t}` in `gamma0 t` units.
pub fn p_markov(t: f64) -> f64 {
    (-t).exp()
}

/// Exponential memory kernel `f(tau) = amplitude * e^{-rate tau}`, in units
/// of `gamma0^2` and `gamma0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationKernel {
    pub amplitude: f64,
    pub rate: f64,
}

impl CorrelationKernel {
    /// `f = 0`: no memory, `G` stays at 1.
    pub fn zero() -> Self {
        Self {
            amplitude: 0.0,
            rate: 0.0,
        }
    }

    pub fn eval(&self, tau: f64) -> f64 {
        if self.amplitude == 0.0 {
            0.0
        } else {
            self.amplitude * (-self.rate * tau).exp()
        }
    }
}

/// `f(tau) = (gamma0 lambda / 2) e^{-lambda tau}`.
pub fn correlation_kernel(spec: &ReservoirSpec) -> CorrelationKernel {
    let r = spec.ratio();
    CorrelationKernel {
        amplitude: 0.5 * r,
        rate: r,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolterraVariant {
    /// Auxiliary variable `z = ∫ e^{-lambda (t - s)} G(s) ds` turns the
    /// exponential-kernel equation into a two-dimensional ODE.
    OdeReduction,
    /// Trapezoidal product integration of the integro-differential equation.
    Quadrature,
}

/// `P` sampled on a uniform grid.
#[derive(Debug, Clone)]
pub struct PTrajectory {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

/// Solves the amplitude equation numerically on `[0, t_max]` and returns `P = |G|^2`.
pub fn p_volterra(
    spec: &ReservoirSpec,
    t_max: f64,
    h: f64,
    variant: VolterraVariant,
) -> Result<PTrajectory> {
    p_volterra_with_kernel(&spec.kernel(), t_max, h, variant)
}

pub fn p_volterra_with_kernel(
    kernel: &CorrelationKernel,
    t_max: f64,
    h: f64,
    variant: VolterraVariant,
) -> Result<PTrajectory> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidStep(h));
    }
    match variant {
        VolterraVariant::OdeReduction => {
            let (amp, rate) = (kernel.amplitude, kernel.rate);
            let traj = ode_rk4(
                |_, y, dy| {
                    dy[0] = -amp * y[1];
                    dy[1] = y[0] - rate * y[1];
                },
                &[1.0, 0.0],
                0.0,
                t_max,
                h,
            )?;
            Ok(PTrajectory {
                times: traj.times,
                values: traj.states.iter().map(|y| y[0] * y[0]).collect(),
            })
        }
        VolterraVariant::Quadrature => {
            let k = *kernel;
            let traj = volterra_product_integration(
                move |tau| Complex64::new(k.eval(tau), 0.0),
                Complex64::new(1.0, 0.0),
                t_max,
                h,
            )?;
            Ok(PTrajectory {
                times: traj.times,
                values: traj.values.iter().map(|g| g.norm_sqr()).collect(),
            })
        }
    }
}

/// `t_k = k t_max / (samples - 1)` for `k = 0..samples`, ending exactly at `t_max`.
pub fn time_grid(t_max: f64, samples: usize) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::Input(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::Input(format!("t_max must be positive, got {t_max}")));
    }
    let spacing = t_max / (samples - 1) as f64;
    Ok((0..samples)
        .map(|k| {
            if k + 1 == samples {
                t_max
            } else {
                k as f64 * spacing
            }
        })
        .collect())
}

/// How `P(t)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MemoryMethod {
    ClosedForm,
    VolterraOde { step: f64 },
    VolterraQuadrature { step: f64 },
    MarkovLimit,
}

impl MemoryMethod {
    pub fn name(&self) -> &'static str {
        match self {
            MemoryMethod::ClosedForm => "closed",
            MemoryMethod::VolterraOde { .. } => "ode",
            MemoryMethod::VolterraQuadrature { .. } => "quadrature",
            MemoryMethod::MarkovLimit => "markov",
        }
    }
}

/// A reservoir paired with a way of evaluating `P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryFunction {
    pub spec: ReservoirSpec,
    pub method: MemoryMethod,
}

impl MemoryFunction {
    pub fn new(spec: ReservoirSpec, method: MemoryMethod) -> Self {
        Self { spec, method }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::Input(format!("time must be non-negative, got {t}")));
        }
        match self.method {
            MemoryMethod::ClosedForm => Ok(self.spec.p_closed(t)),
            MemoryMethod::MarkovLimit => Ok(p_markov(t)),
            MemoryMethod::VolterraOde { step } | MemoryMethod::VolterraQuadrature { step } => {
                if t == 0.0 {
                    return Ok(1.0);
                }
                let variant = self.variant().expect("numerical method");
                let traj = p_volterra(&self.spec, t, step, variant)?;
                Ok(*traj.values.last().expect("non-empty trajectory"))
            }
        }
    }

    fn variant(&self) -> Option<VolterraVariant> {
        match self.method {
            MemoryMethod::VolterraOde { .. } => Some(VolterraVariant::OdeReduction),
            MemoryMethod::VolterraQuadrature { .. } => Some(VolterraVariant::Quadrature),
            _ => None,
        }
    }

    /// `P` on [`time_grid`]. Numerical methods integrate with a step that
    /// divides the sample spacing, at most the requested one.
    pub fn sample_uniform(&self, t_max: f64, samples: usize) -> Result<Vec<f64>> {
        let times = time_grid(t_max, samples)?;
        let spacing = t_max / (samples - 1) as f64;
        let time = |k: usize| times[k];
        match self.method {
            MemoryMethod::ClosedForm => {
                Ok((0..samples).map(|k| self.spec.p_closed(time(k))).collect())
            }
            MemoryMethod::MarkovLimit => Ok((0..samples).map(|k| p_markov(time(k))).collect()),
            MemoryMethod::VolterraOde { step } | MemoryMethod::VolterraQuadrature { step } => {
                let (sub, _) = uniform_steps(spacing, step);
                let h = t_max / ((samples - 1) * sub) as f64;
                let variant = self.variant().expect("numerical method");
                let traj = p_volterra(&self.spec, t_max, h, variant)?;
                debug_assert_eq!(traj.values.len(), (samples - 1) * sub + 1);
                Ok((0..samples).map(|k| traj.values[k * sub]).collect())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: f64) -> ReservoirSpec {
        ReservoirSpec::from_ratio(r).unwrap()
    }

    #[test]
    fn regime_classification() {
        assert_eq!(spec(0.1).regime(), Regime::Strong);
        assert_eq!(spec(5.0).regime(), Regime::Weak);
        assert_eq!(spec(2.0).regime(), Regime::Critical);
        assert_eq!(
            ReservoirSpec::new(3.0, 6.0).unwrap().regime(),
            Regime::Critical
        );
        assert!(ReservoirSpec::new(0.0, 1.0).is_err());
        assert!(ReservoirSpec::new(1.0, -1.0).is_err());
    }

    #[test]
    fn derived_times() {
        let s = ReservoirSpec::new(2.0, 0.5).unwrap();
        assert_eq!(s.tau_b(), 2.0);
        assert_eq!(s.tau_r(), 0.5);
        assert_eq!(s.ratio(), 0.25);
    }

    #[test]
    fn kernel_values() {
        let k = spec(0.1).kernel();
        assert_eq!(k.eval(0.0), 0.05);
        assert!((k.eval(10.0) - 0.05 * (-1.0f64).exp()).abs() < 1e-17);
        assert!((k.eval(3.0) / k.eval(0.0) - (-0.3f64).exp()).abs() < 1e-15);
        assert_eq!(CorrelationKernel::zero().eval(5.0), 0.0);
    }

    #[test]
    fn closed_forms_start_at_one() {
        for r in [0.01, 0.1, 1.0, 2.0, 5.0, 500.0] {
            assert_eq!(spec(r).p_closed(0.0), 1.0);
        }
        assert_eq!(p_markov(0.0), 1.0);
        assert!((p_markov(std::f64::consts::LN_2) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn regime_errors() {
        assert!(matches!(
            spec(5.0).p_closed_strong(1.0),
            Err(Error::Regime { .. })
        ));
        assert!(matches!(
            spec(0.1).p_closed_weak(1.0),
            Err(Error::Regime { .. })
        ));
        assert!(matches!(spec(5.0).p_zeros(3), Err(Error::Regime { .. })));
        assert!(spec(0.1).p_zeros(0).is_err());
    }

    #[test]
    fn critical_point_is_continuous() {
        let crit = spec(2.0);
        let below = spec(2.0 - 1e-7);
        let above = spec(2.0 + 1e-7);
        for t in [0.3, 1.0, 4.0] {
            assert!((crit.p_closed(t) - below.p_closed(t)).abs() < 1e-6);
            assert!((crit.p_closed(t) - above.p_closed(t)).abs() < 1e-6);
        }
    }

    #[test]
    fn zeros_are_equally_spaced() {
        let s = spec(0.1);
        let z = s.p_zeros(5).unwrap();
        let period = 2.0 * std::f64::consts::PI / s.d();
        for w in z.windows(2) {
            assert!((w[1] - w[0] - period).abs() < 1e-12);
        }
        for t in z {
            assert!(s.p_closed(t) < 1e-24);
        }
    }

    #[test]
    fn zero_kernel_gives_unit_p() {
        for variant in [VolterraVariant::OdeReduction, VolterraVariant::Quadrature] {
            let traj =
                p_volterra_with_kernel(&CorrelationKernel::zero(), 3.0, 0.01, variant).unwrap();
            assert!(traj.values.iter().all(|&p| p == 1.0));
        }
    }

    #[test]
    fn non_positive_step_is_rejected() {
        for variant in [VolterraVariant::OdeReduction, VolterraVariant::Quadrature] {
            assert!(matches!(
                p_volterra(&spec(0.1), 1.0, 0.0, variant),
                Err(Error::InvalidStep(_))
            ));
        }
    }

    #[test]
    fn uniform_sampling_aligns_with_integration_grid() {
        let mf = MemoryFunction::new(spec(0.1), MemoryMethod::VolterraOde { step: 1e-3 });
        let p = mf.sample_uniform(2.0, 21).unwrap();
        for (k, v) in p.iter().enumerate() {
            let t = k as f64 * 0.1;
            assert!((v - spec(0.1).p_closed(t)).abs() < 1e-12);
        }
    }
}
