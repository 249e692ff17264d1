//! The oracle suite behind `nonmarkov validate`: every check compares two
//! independent routes (or a route and a known bound) and reports the measured
//! deviation next to its tolerance.

use std::f64::consts::PI;
use std::fmt::Write as _;

use nonmarkov::damping::damping_channel;
use nonmarkov::entanglement::{concurrence, concurrence_phi, concurrence_psi, concurrence_x};
use nonmarkov::kernel::{p_volterra, ReservoirSpec, VolterraVariant};
use nonmarkov::numerics::ComplexMatrix;
use nonmarkov::sample::{random_density, random_unitary, random_x_state};
use nonmarkov::state::{make_phi, make_psi, pure_to_density, validate as inspect, DensityMatrix};
use nonmarkov::two_qubit::{evolve_closed_form, evolve_product_path};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::ValidateConfig;

/// Deliberate defects for exercising the report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Feed the closed form a state written in ground-first order.
    BasisOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Pass when `measured <= limit`.
    AtMost,
    /// Pass when `measured >= limit`.
    AtLeast,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub limit: f64,
    pub bound: Bound,
    pub error: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.error.is_none()
            && match self.bound {
                Bound::AtMost => self.measured <= self.limit,
                Bound::AtLeast => self.measured >= self.limit,
            }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn render(&self) -> String {
        let mut s = format!("validate seed={}\n", self.seed);
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let (label, op) = match c.bound {
                Bound::AtMost => ("max_dev", "tol"),
                Bound::AtLeast => ("value", "min"),
            };
            let _ = write!(
                s,
                "{status} {:<28} {label}={:.3e} {op}={:e}",
                c.name, c.measured, c.limit
            );
            if let Some(e) = &c.error {
                let _ = write!(s, " error: {e}");
            }
            s.push('\n');
        }
        let _ = writeln!(
            s,
            "summary: {} passed, {} failed",
            self.checks.len() - self.failures(),
            self.failures()
        );
        s
    }
}

type Measure = Result<f64, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// `|00>`-first relabelling of the excited-first basis.
fn ground_first(rho: &DensityMatrix) -> DensityMatrix {
    let m = rho.matrix();
    DensityMatrix::from_matrix_unchecked(ComplexMatrix::from_fn(4, 4, |r, c| m[(3 - r, 3 - c)]))
}

fn crosscheck(rng: &mut ChaCha8Rng, fault: Option<Fault>) -> Measure {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let rho = random_density(rng, 4);
        let input = match fault {
            Some(Fault::BasisOrder) => ground_first(&rho),
            None => rho.clone(),
        };
        for k in 0..=10 {
            let p = k as f64 / 10.0;
            let closed = evolve_closed_form(&input, p).map_err(err)?;
            let generic = evolve_product_path(&rho, p).map_err(err)?;
            worst = worst.max(closed.matrix().max_abs_diff(generic.matrix()));
        }
    }
    Ok(worst)
}

fn family_routes() -> Measure {
    let mut worst = 0.0f64;
    for i in 0..=50 {
        for j in 0..=50 {
            let (alpha2, p): (f64, f64) = (i as f64 / 50.0, j as f64 / 50.0);
            let a = alpha2.sqrt();
            let phi = pure_to_density(&make_phi(a, 0.0).map_err(err)?).map_err(err)?;
            let psi = pure_to_density(&make_psi(a, 0.0).map_err(err)?).map_err(err)?;
            let c_phi = concurrence(&evolve_closed_form(&phi, p).map_err(err)?).map_err(err)?;
            let c_psi = concurrence(&evolve_closed_form(&psi, p).map_err(err)?).map_err(err)?;
            worst = worst
                .max((c_phi - concurrence_phi(a, p)).abs())
                .max((c_psi - concurrence_psi(a, p)).abs());
        }
    }
    Ok(worst)
}

fn x_state_routes(rng: &mut ChaCha8Rng) -> Measure {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let x = random_x_state(rng);
        worst = worst.max((concurrence(&x.embed()).map_err(err)? - concurrence_x(&x)).abs());
    }
    Ok(worst)
}

fn volterra_vs_closed(ratio: f64, variant: VolterraVariant, h: f64) -> Measure {
    let spec = ReservoirSpec::from_ratio(ratio).map_err(err)?;
    let traj = p_volterra(&spec, 20.0, h, variant).map_err(err)?;
    Ok(traj
        .times
        .iter()
        .zip(&traj.values)
        .map(|(&t, p)| (p - spec.p_closed(t)).abs())
        .fold(0.0, f64::max))
}

fn quadrature_order() -> Measure {
    let coarse = volterra_vs_closed(0.1, VolterraVariant::Quadrature, 0.02)?;
    let fine = volterra_vs_closed(0.1, VolterraVariant::Quadrature, 0.01)?;
    Ok(coarse / fine)
}

fn zero_locations() -> Measure {
    let spec = ReservoirSpec::from_ratio(0.1).map_err(err)?;
    let scanned = spec.amplitude_zeros_by_bisection(40.0, 0.05).map_err(err)?;
    let formula = spec.p_zeros(scanned.len().max(1)).map_err(err)?;
    if scanned.len() < 2 {
        return Err(format!("expected zeros below 40, found {}", scanned.len()));
    }
    Ok(scanned
        .iter()
        .zip(&formula)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

fn local_unitaries(rng: &mut ChaCha8Rng) -> Measure {
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let rho = random_density(rng, 4);
        let u = random_unitary(rng, 2).kron(&random_unitary(rng, 2));
        let moved = rho.unitary_conjugate(&u).map_err(err)?;
        worst =
            worst.max((concurrence(&rho).map_err(err)? - concurrence(&moved).map_err(err)?).abs());
    }
    Ok(worst)
}

/// Largest trace, hermiticity and negativity defects along sample trajectories.
fn physicality() -> Result<[f64; 3], String> {
    let spec = ReservoirSpec::from_ratio(0.1).map_err(err)?;
    let mut worst = [0.0f64; 3];
    for i in 0..=10 {
        let a = (i as f64 / 10.0).sqrt();
        for s in [make_phi(a, 0.3), make_psi(a, 0.3)] {
            let rho0 = pure_to_density(&s.map_err(err)?).map_err(err)?;
            for k in 0..=200 {
                let p = spec.p_closed(k as f64 * 0.1);
                let r = inspect(&evolve_closed_form(&rho0, p).map_err(err)?);
                worst[0] = worst[0].max(r.trace_deviation);
                worst[1] = worst[1].max(r.hermiticity_deviation);
                worst[2] = worst[2].max(-r.min_eigenvalue);
            }
        }
    }
    Ok(worst)
}

fn damping_cp() -> Measure {
    let mut worst = 0.0f64;
    for k in 0..=100 {
        let map = damping_channel(k as f64 / 100.0).map_err(err)?.map;
        worst = worst
            .max(-map.choi_min_eigenvalue().map_err(err)?)
            .max(map.trace_deviation());
    }
    Ok(worst)
}

fn phase_independence() -> Measure {
    let mut worst = 0.0f64;
    for alpha2 in [0.2f64, 0.5, 0.8] {
        for p in [0.2, 0.7] {
            let c = |delta: f64| -> Measure {
                let rho =
                    pure_to_density(&make_phi(alpha2.sqrt(), delta).map_err(err)?).map_err(err)?;
                concurrence(&evolve_closed_form(&rho, p).map_err(err)?).map_err(err)
            };
            let base = c(0.0)?;
            for delta in [PI / 4.0, PI, 1.5 * PI] {
                worst = worst.max((c(delta)? - base).abs());
            }
        }
    }
    Ok(worst)
}

fn check(name: &'static str, measured: Measure, limit: f64, bound: Bound) -> Check {
    match measured {
        Ok(m) => Check {
            name,
            measured: m,
            limit,
            bound,
            error: None,
        },
        Err(e) => Check {
            name,
            measured: f64::NAN,
            limit,
            bound,
            error: Some(e),
        },
    }
}

/// Runs every check. `cfg.tol` replaces the deviation tolerances; the
/// convergence-order check keeps its own bound.
pub fn run(cfg: &ValidateConfig, fault: Option<Fault>) -> Report {
    let tol = |default: f64| cfg.tol.unwrap_or(default);
    let rng = |k: u64| ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(k));
    let phys = physicality();
    let part = |i: usize| phys.clone().map(|w| w[i]);

    let checks = vec![
        check(
            "crosscheck",
            crosscheck(&mut rng(1), fault),
            tol(1e-12),
            Bound::AtMost,
        ),
        check(
            "concurrence-families",
            family_routes(),
            tol(1e-10),
            Bound::AtMost,
        ),
        check(
            "concurrence-x-states",
            x_state_routes(&mut rng(2)),
            tol(1e-10),
            Bound::AtMost,
        ),
        check(
            "volterra-ode-strong",
            volterra_vs_closed(0.1, VolterraVariant::OdeReduction, 1e-3),
            tol(1e-6),
            Bound::AtMost,
        ),
        check(
            "volterra-quadrature-strong",
            volterra_vs_closed(0.1, VolterraVariant::Quadrature, 1e-3),
            tol(1e-6),
            Bound::AtMost,
        ),
        check(
            "volterra-ode-weak",
            volterra_vs_closed(5.0, VolterraVariant::OdeReduction, 1e-3),
            tol(1e-6),
            Bound::AtMost,
        ),
        check(
            "volterra-quadrature-weak",
            volterra_vs_closed(5.0, VolterraVariant::Quadrature, 1e-3),
            tol(1e-6),
            Bound::AtMost,
        ),
        check("quadrature-order", quadrature_order(), 3.5, Bound::AtLeast),
        check("zero-locations", zero_locations(), tol(1e-9), Bound::AtMost),
        check(
            "local-unitary-invariance",
            local_unitaries(&mut rng(3)),
            tol(1e-9),
            Bound::AtMost,
        ),
        check(
            "phase-independence",
            phase_independence(),
            tol(1e-12),
            Bound::AtMost,
        ),
        check("trace", part(0), tol(1e-12), Bound::AtMost),
        check("hermiticity", part(1), tol(1e-12), Bound::AtMost),
        check("positivity", part(2), tol(1e-10), Bound::AtMost),
        check("damping-cptp", damping_cp(), tol(1e-10), Bound::AtMost),
    ];
    Report {
        seed: cfg.seed,
        checks,
    }
}
