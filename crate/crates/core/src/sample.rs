//! Seeded random states and unitaries for validation sweeps.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::numerics::ComplexMatrix;
use crate::state::DensityMatrix;
use crate::two_qubit::XState;

fn ginibre<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Full-rank mixed state `G G^dagger / tr(G G^dagger)` from a Ginibre matrix.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityMatrix {
    let g = ginibre(rng, dim);
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    let mut m = w.scale(Complex64::new(1.0 / tr, 0.0));
    for i in 0..dim {
        m[(i, i)].im = 0.0;
    }
    DensityMatrix::from_matrix_unchecked(m)
}

/// Haar-ish unitary by Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for c in 0..dim {
        let mut v: Vec<Complex64> = (0..dim).map(|r| g[(r, c)]).collect();
        for q in &cols {
            let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    ComplexMatrix::from_fn(dim, dim, |r, c| cols[c][r])
}

/// Random valid X state: Dirichlet-like populations and coherences drawn
/// inside the positivity disc of each 2x2 block.
pub fn random_x_state<R: Rng + ?Sized>(rng: &mut R) -> XState {
    let raw: [f64; 4] = [(); 4].map(|_| -(1.0 - rng.gen::<f64>()).ln());
    let sum: f64 = raw.iter().sum();
    let diag = raw.map(|x| x / sum);
    let mut coherence = |a: f64, b: f64| {
        let radius = (a * b).sqrt() * rng.gen::<f64>();
        Complex64::from_polar(radius, std::f64::consts::TAU * rng.gen::<f64>())
    };
    let rho14 = coherence(diag[0], diag[3]);
    let rho23 = coherence(diag[1], diag[2]);
    XState { diag, rho14, rho23 }
}
