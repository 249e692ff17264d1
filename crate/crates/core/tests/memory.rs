use nonmarkov::damping::channel_at_time;
use nonmarkov::kernel::{
    p_markov, p_volterra, MemoryFunction, MemoryMethod, Regime, ReservoirSpec, VolterraVariant,
};
use nonmarkov::Error;

// Reference values below were computed with 40-digit arithmetic.
const P_STRONG_AT_1: f64 = 0.952_405_882_652_670_758_97;
const P_STRONG_AT_HALF: f64 = 0.987_756_222_053_367_484_92;
const P_WEAK_AT_HALF: f64 = 0.719_783_879_099_025_786_31;
const T1_LAMBDA_0_1: f64 = 8.242_034_311_692_072_357_6;
const SPACING_LAMBDA_0_1: f64 = 14.414_615_682_913_358_908;
const T1_LAMBDA_0_01: f64 = 23.273_506_583_285_333_930;
const SPACING_LAMBDA_0_01: f64 = 44.540_319_718_441_364_224;
const WEAK_RATE_LAMBDA_5: f64 = 1.127_016_653_792_583_114_8;
const FAST_BATH_RATIO: f64 = 0.996_999_500_167_544_720_04;

fn spec(ratio: f64) -> ReservoirSpec {
    ReservoirSpec::from_ratio(ratio).unwrap()
}

#[test]
fn closed_form_reference_values() {
    assert!((spec(0.1).p_closed(1.0) - P_STRONG_AT_1).abs() < 1e-15);
    assert!((spec(0.1).p_closed(0.5) - P_STRONG_AT_HALF).abs() < 1e-15);
    assert!((spec(5.0).p_closed(0.5) - P_WEAK_AT_HALF).abs() < 1e-15);
    assert!((spec(500.0).p_closed(5.0) / (-5.0f64).exp() - FAST_BATH_RATIO).abs() < 1e-13);
}

#[test]
fn regimes_and_timescales() {
    let s = ReservoirSpec::new(2.0, 0.5).unwrap();
    assert_eq!(s.regime(), Regime::Strong);
    assert!((s.ratio() - 0.25).abs() < 1e-15);
    assert!((s.tau_b() - 2.0).abs() < 1e-15);
    assert!((s.tau_r() - 0.5).abs() < 1e-15);
    assert_eq!(spec(5.0).regime(), Regime::Weak);
    assert_eq!(spec(2.0).regime(), Regime::Critical);
    assert!(ReservoirSpec::new(0.0, 1.0).is_err());
    assert!(ReservoirSpec::new(1.0, -1.0).is_err());
}

#[test]
fn regime_specific_evaluators_refuse_the_other_regime() {
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
    for t in [0.5, 2.0, 7.0] {
        let at = spec(2.0).p_closed(t);
        assert!((spec(2.0 - 1e-7).p_closed(t) - at).abs() < 1e-6);
        assert!((spec(2.0 + 1e-7).p_closed(t) - at).abs() < 1e-6);
        let limit = (-2.0 * t).exp() * (1.0 + t).powi(2);
        assert!((at - limit).abs() < 1e-15);
    }
}

#[test]
fn zero_locations() {
    let z = spec(0.1).p_zeros(4).unwrap();
    assert!((z[0] - T1_LAMBDA_0_1).abs() < 1e-12);
    for w in z.windows(2) {
        assert!((w[1] - w[0] - SPACING_LAMBDA_0_1).abs() < 1e-10);
    }
    let z = spec(0.01).p_zeros(2).unwrap();
    assert!((z[0] - T1_LAMBDA_0_01).abs() < 1e-11);
    assert!((z[1] - z[0] - SPACING_LAMBDA_0_01).abs() < 1e-10);
}

#[test]
fn zeros_are_exact_and_flip_the_amplitude() {
    let s = spec(0.1);
    for t in s.p_zeros(5).unwrap() {
        assert!(s.p_closed_strong(t).unwrap() < 1e-24);
        let (before, after) = (s.amplitude(t - 1e-3), s.amplitude(t + 1e-3));
        assert!(before * after < 0.0);
    }
    let scanned = s.amplitude_zeros_by_bisection(60.0, 0.05).unwrap();
    let formula = s.p_zeros(scanned.len()).unwrap();
    assert_eq!(scanned.len(), 4);
    for (a, b) in scanned.iter().zip(&formula) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn bounds_hold_for_every_method() {
    let methods = [
        MemoryMethod::ClosedForm,
        MemoryMethod::VolterraOde { step: 1e-2 },
        MemoryMethod::VolterraQuadrature { step: 1e-2 },
        MemoryMethod::MarkovLimit,
    ];
    for ratio in [0.01, 0.1, 1.0, 2.0, 5.0, 50.0] {
        for method in methods {
            let f = MemoryFunction::new(spec(ratio), method);
            assert_eq!(f.eval(0.0).unwrap(), 1.0);
            for p in f.sample_uniform(20.0, 401).unwrap() {
                assert!(
                    (0.0..=1.0 + 1e-9).contains(&p),
                    "{} at ratio {ratio}: {p}",
                    method.name()
                );
            }
        }
    }
}

#[test]
fn weak_regime_is_monotone_without_zeros() {
    let values = MemoryFunction::new(spec(5.0), MemoryMethod::ClosedForm)
        .sample_uniform(30.0, 3001)
        .unwrap();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    assert!(values.iter().all(|&p| p > 0.0));
}

#[test]
fn weak_regime_log_slope() {
    let s = spec(5.0);
    let slope = -(s.p_closed(6.0).ln() - s.p_closed(3.0).ln()) / 3.0;
    assert!((slope - WEAK_RATE_LAMBDA_5).abs() < 1e-4, "slope {slope}");
}

#[test]
fn fast_bath_approaches_exponential_decay() {
    let s = spec(500.0);
    for t in [0.5, 1.0, 2.0, 5.0, 10.0] {
        assert!((s.p_closed(t) / p_markov(t) - 1.0).abs() < 0.02);
    }
    assert_eq!(
        MemoryFunction::new(s, MemoryMethod::MarkovLimit)
            .eval(2.0)
            .unwrap(),
        (-2.0f64).exp()
    );
}

fn max_deviation(ratio: f64, variant: VolterraVariant, h: f64) -> f64 {
    let s = spec(ratio);
    let traj = p_volterra(&s, 20.0, h, variant).unwrap();
    traj.times
        .iter()
        .zip(&traj.values)
        .map(|(&t, p)| (p - s.p_closed(t)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn volterra_matches_closed_form_in_both_regimes() {
    for ratio in [0.1, 5.0] {
        for variant in [VolterraVariant::OdeReduction, VolterraVariant::Quadrature] {
            let dev = max_deviation(ratio, variant, 1e-3);
            assert!(dev < 1e-6, "{variant:?} at ratio {ratio}: {dev:e}");
        }
    }
}

#[test]
fn quadrature_converges_to_ode_reduction_at_second_order() {
    let s = spec(0.1);
    let reference = p_volterra(&s, 10.0, 1e-3, VolterraVariant::OdeReduction).unwrap();
    let gap = |h: f64| {
        let quad = p_volterra(&s, 10.0, h, VolterraVariant::Quadrature).unwrap();
        let stride = (h / 1e-3).round() as usize;
        quad.values
            .iter()
            .enumerate()
            .map(|(k, q)| (q - reference.values[k * stride]).abs())
            .fold(0.0, f64::max)
    };
    let ratio = gap(0.04) / gap(0.02);
    assert!(ratio >= 3.5, "ratio {ratio}");
}

/// Fourier transform of the Lorentzian spectral density, by quadrature.
fn kernel_by_quadrature(lambda: f64, tau: f64) -> f64 {
    // J(w) = (1/2pi) lambda^2 / (x^2 + lambda^2), x = w0 - w, in units of gamma0.
    let density = |x: f64| lambda * lambda / (x * x + lambda * lambda) / std::f64::consts::TAU;
    if tau == 0.0 {
        // x = lambda tan(theta) turns the integrand into a constant on (-pi/2, pi/2).
        let n = 2000;
        let h = std::f64::consts::PI / n as f64;
        return (0..n)
            .map(|k| {
                let theta = -std::f64::consts::FRAC_PI_2 + (k as f64 + 0.5) * h;
                let x = lambda * theta.tan();
                density(x) * lambda / theta.cos().powi(2) * h
            })
            .sum();
    }
    // Composite Simpson on [-X, X]; the tail beyond X is below 1e-9 here.
    let (half, n) = (1e4, 4_000_000usize);
    let h = 2.0 * half / n as f64;
    let g = |x: f64| density(x) * (x * tau).cos();
    let mut sum = g(-half) + g(half);
    for k in 1..n {
        sum += if k % 2 == 1 { 4.0 } else { 2.0 } * g(-half + k as f64 * h);
    }
    sum * h / 3.0
}

#[test]
fn kernel_is_the_transform_of_the_lorentzian() {
    for lambda in [0.1, 1.0] {
        let k = spec(lambda).kernel();
        assert!((kernel_by_quadrature(lambda, 0.0) - k.eval(0.0)).abs() < 1e-8);
        for tau in [0.5, 3.0] {
            assert!(
                (kernel_by_quadrature(lambda, tau) - k.eval(tau)).abs() < 1e-6,
                "lambda {lambda} tau {tau}"
            );
        }
    }
}

#[test]
fn snapshots_follow_the_memory_function() {
    let s = spec(0.1);
    assert_eq!(
        channel_at_time(&s, 0.0, MemoryMethod::ClosedForm)
            .unwrap()
            .p,
        1.0
    );
    let t1 = s.p_zeros(1).unwrap()[0];
    let at_zero = channel_at_time(&s, t1, MemoryMethod::ClosedForm).unwrap();
    assert!(at_zero.p < 1e-24);
    assert!(at_zero.map.is_cptp().unwrap());
}
