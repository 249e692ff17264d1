use nonmarkov::numerics::{
    eigenvalues, hermitian_eigenvalues, ode_rk4, volterra_product_integration, ComplexMatrix,
    DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use nonmarkov::sample::random_unitary;
use nonmarkov::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spectrum(m: &ComplexMatrix) -> Vec<Complex64> {
    let r = eigenvalues(m, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    assert!(r.converged);
    r.values
}

/// Largest distance under a greedy nearest matching of two multisets.
fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut left: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = left
            .iter()
            .enumerate()
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        worst = worst.max(d);
        left.swap_remove(k);
    }
    worst
}

fn matrix_from(entries: &[(f64, f64)], n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |r, c| {
        let (re, im) = entries[r * n + c];
        Complex64::new(re, im)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn similarity_preserves_spectrum(
        entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16),
        scales in prop::collection::vec(0.5f64..2.0, 4),
        seed in any::<u64>(),
    ) {
        let m = matrix_from(&entries, 4);
        let u = random_unitary(&mut ChaCha8Rng::seed_from_u64(seed), 4);
        let d = ComplexMatrix::diag(&scales.iter().map(|&s| Complex64::new(s, 0.0)).collect::<Vec<_>>());
        let d_inv = ComplexMatrix::diag(&scales.iter().map(|&s| Complex64::new(1.0 / s, 0.0)).collect::<Vec<_>>());
        let s = &d * &u;
        let s_inv = &u.adjoint() * &d_inv;
        let similar = &(&s * &m) * &s_inv;
        let dist = multiset_distance(&spectrum(&m), &spectrum(&similar));
        prop_assert!(dist < 1e-8, "spectra differ by {dist:e}");
    }

    #[test]
    fn eigenvalues_sum_to_trace(entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 36)) {
        let m = matrix_from(&entries, 6);
        let sum: Complex64 = spectrum(&m).iter().sum();
        let scale = m.frobenius_norm().max(1.0);
        // `tol` is relative, so the bound scales with the matrix size and norm.
        prop_assert!((sum - m.trace()).norm() <= 10.0 * DEFAULT_TOL * 6.0 * scale);
    }

    #[test]
    fn hermitian_route_matches_general_solver(entries in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 16)) {
        let raw = matrix_from(&entries, 4);
        let h = &raw + &raw.adjoint();
        let mut general: Vec<f64> = spectrum(&h).iter().map(|z| z.re).collect();
        general.sort_by(f64::total_cmp);
        let jacobi = hermitian_eigenvalues(&h).unwrap();
        for (a, b) in general.iter().zip(&jacobi) {
            prop_assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn rk4_is_fourth_order() {
    // y'' = -y, y(0) = 1, y'(0) = 0
    let error = |h: f64| {
        let traj = ode_rk4(
            |_, y, dy| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            &[1.0, 0.0],
            0.0,
            5.0,
            h,
        )
        .unwrap();
        (traj.states.last().unwrap()[0] - 5.0f64.cos()).abs()
    };
    let ratio = error(0.1) / error(0.05);
    assert!(ratio >= 14.0, "ratio {ratio}");
}

#[test]
fn volterra_is_second_order_on_exponential_kernel() {
    // G' = -int_0^t e^{-2(t-s)} G(s) ds has G = e^{-t}(1 + t).
    let exact = |t: f64| (-t).exp() * (1.0 + t);
    let error = |h: f64| {
        let traj = volterra_product_integration(
            |tau| Complex64::new((-2.0 * tau).exp(), 0.0),
            Complex64::new(1.0, 0.0),
            4.0,
            h,
        )
        .unwrap();
        traj.times
            .iter()
            .zip(&traj.values)
            .map(|(&t, g)| (g.re - exact(t)).abs())
            .fold(0.0, f64::max)
    };
    let ratio = error(0.02) / error(0.01);
    assert!(ratio >= 3.5, "ratio {ratio}");
}
