//! Eigenvalues of small dense matrices.
//!
//! [`eigenvalues`] handles general complex matrices: Householder reduction to
//! upper Hessenberg form followed by single-shift QR sweeps with Wilkinson
//! shifts and deflation. It only tracks eigenvalues, so every transformation
//! is restricted to the active unreduced window.
//!
//! [`hermitian_eigen`] runs cyclic complex Jacobi, which gives small
//! eigenvalues of Hermitian matrices to absolute accuracy near machine
//! precision together with orthonormal eigenvectors. It backs the positivity
//! checks on density and Choi matrices and the concurrence.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::{Error, Result};

/// Outcome of [`eigenvalues`].
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Unsorted eigenvalues. When `converged` is false these are the current
    /// diagonal of the partially reduced matrix.
    pub values: Vec<Complex64>,
    pub converged: bool,
    pub iterations: usize,
}

/// Default relative deflation threshold.
pub const DEFAULT_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_ITER: usize = 500;

/// All eigenvalues of a square complex matrix.
///
/// Intended for dimensions up to 16 or so. `tol` is the relative size a
/// subdiagonal entry must drop below before the problem is split there.
pub fn eigenvalues(m: &ComplexMatrix, tol: f64, max_iter: usize) -> Result<EigenResult> {
    if !m.is_square() {
        return Err(Error::dimension(
            "square matrix",
            format!("{}x{}", m.rows(), m.cols()),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::Input(format!(
            "eigensolver tolerance must be positive, got {tol}"
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(EigenResult {
            values: Vec::new(),
            converged: true,
            iterations: 0,
        });
    }

    let mut h = hessenberg(m);
    let scale = h.max_abs();
    // Absolute floor for deflation when the neighbouring diagonal is zero.
    let floor = f64::MIN_POSITIVE.max(scale * f64::EPSILON * 1e-2);

    let mut values = vec![Complex64::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut iterations = 0;
    let mut since_deflation = 0;

    loop {
        if hi == 0 {
            values[0] = h[(0, 0)];
            break;
        }

        // Find the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let neighbours = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= tol * neighbours || sub <= floor {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }

        if lo == hi {
            values[hi] = h[(hi, hi)];
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        if iterations >= max_iter {
            for (i, v) in values.iter_mut().enumerate().take(hi + 1) {
                *v = h[(i, i)];
            }
            return Ok(EigenResult {
                values,
                converged: false,
                iterations,
            });
        }
        iterations += 1;
        since_deflation += 1;

        let shift = if since_deflation % 11 == 0 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_sweep(&mut h, lo, hi, shift);
    }

    Ok(EigenResult {
        values,
        converged: true,
        iterations,
    })
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let r1 = mean + disc;
    let r2 = mean - disc;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// One shifted QR step `H - mu I = QR`, `H <- RQ + mu I` on rows/cols `lo..=hi`.
fn qr_sweep(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }

    let mut rotations = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for j in k..=hi {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = c.conj() * x + s.conj() * y;
            h[(k + 1, j)] = -s * x + c * y;
        }
        h[(k + 1, k)] = Complex64::new(0.0, 0.0);
        rotations.push((c, s));
    }

    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        let last = (k + 2).min(hi);
        for i in lo..=last {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s;
            h[(i, k + 1)] = -x * s.conj() + y * c.conj();
        }
    }

    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}

/// Complex Givens pair `(c, s)` such that `[[c*, s*], [-s, c]] [x; y] = [r; 0]`.
fn givens(x: Complex64, y: Complex64) -> (Complex64, Complex64) {
    let r = x.norm().hypot(y.norm());
    if r == 0.0 {
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    } else {
        (x / r, y / r)
    }
}

/// Householder reduction to upper Hessenberg form (similarity transform).
fn hessenberg(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let mut a = m.clone();
    if n < 3 {
        return a;
    }
    for k in 0..n - 2 {
        let tail_norm: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if tail_norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let norm = x0.norm().hypot(tail_norm);
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // v = x + phase * |x| e1, reflector I - 2 v v^H / (v^H v)
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] += phase * norm;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm_sqr;

        // Left: rows k+1..n.
        for j in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(r, vr)| vr.conj() * a[(k + 1 + r, j)])
                .sum();
            let f = dot * beta;
            for (r, vr) in v.iter().enumerate() {
                a[(k + 1 + r, j)] -= vr * f;
            }
        }
        // Right: columns k+1..n.
        for i in 0..n {
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(c, vc)| a[(i, k + 1 + c)] * vc)
                .sum();
            let f = dot * beta;
            for (c, vc) in v.iter().enumerate() {
                a[(i, k + 1 + c)] -= f * vc.conj();
            }
        }
        for i in k + 2..n {
            a[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    a
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Only the Hermitian part `(m + m^H) / 2` is used.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

/// Spectral decomposition `m = V diag(values) V^H` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Unitary whose column `k` belongs to `values[k]`.
    pub vectors: ComplexMatrix,
}

/// Cyclic complex Jacobi on the Hermitian part of `m`.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    const MAX_SWEEPS: usize = 100;
    if !m.is_square() {
        return Err(Error::dimension(
            "square matrix",
            format!("{}x{}", m.rows(), m.cols()),
        ));
    }
    let n = m.rows();
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let zero = Complex64::new(0.0, 0.0);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let mag = apq.norm();
                if mag <= 1e-18 * (app.abs() + aqq.abs()) || mag < f64::MIN_POSITIVE {
                    a[(p, q)] = zero;
                    a[(q, p)] = zero;
                    continue;
                }
                rotated = true;
                // Phase out apq, then a real rotation on the (p, q) plane.
                let w = (apq / mag).conj();
                let theta = (aqq - app) / (2.0 * mag);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J[p][p] = c, J[p][q] = s, J[q][p] = -s w, J[q][q] = c w
                let (jpp, jpq, jqp, jqq) = (
                    Complex64::new(c, 0.0),
                    Complex64::new(s, 0.0),
                    -w * s,
                    w * c,
                );
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = zero;
                a[(q, p)] = zero;
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
        if !rotated {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
            return Ok(HermitianEigen {
                values: order.iter().map(|&k| a[(k, k)].re).collect(),
                vectors: ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]),
            });
        }
    }
    Err(Error::NotConverged(MAX_SWEEPS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| b.re.total_cmp(&a.re));
        v.into_iter().map(|z| z.re).collect()
    }

    #[test]
    fn identity_spectrum() {
        let r = eigenvalues(&ComplexMatrix::identity(4), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(r.converged);
        for v in r.values {
            assert!((v - c(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn diagonal_spectrum() {
        let m = ComplexMatrix::diag(&[c(4.0, 0.0), c(3.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        let r = eigenvalues(&m, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let v = sorted_re(r.values);
        for (got, want) in v.iter().zip([4.0, 3.0, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn rotation_has_complex_pair() {
        let m = ComplexMatrix::from_real_rows(&[[0.0, -1.0], [1.0, 0.0]]);
        let r = eigenvalues(&m, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let mut ims: Vec<f64> = r.values.iter().map(|z| z.im).collect();
        ims.sort_by(f64::total_cmp);
        assert!((ims[0] + 1.0).abs() < 1e-14 && (ims[1] - 1.0).abs() < 1e-14);
        assert!(r.values.iter().all(|z| z.re.abs() < 1e-14));
    }

    #[test]
    fn companion_matrix_roots() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let m =
            ComplexMatrix::from_real_rows(&[[6.0, -11.0, 6.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]);
        let r = eigenvalues(&m, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let v = sorted_re(r.values);
        for (got, want) in v.iter().zip([3.0, 2.0, 1.0]) {
            assert!((got - want).abs() < 1e-12, "{v:?}");
        }
    }

    #[test]
    fn rejects_non_square() {
        assert!(matches!(
            eigenvalues(&ComplexMatrix::zeros(2, 3), 1e-14, 10),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn reports_non_convergence() {
        let m =
            ComplexMatrix::from_real_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 10.0]]);
        let r = eigenvalues(&m, 1e-15, 0).unwrap();
        assert!(!r.converged);
        assert_eq!(r.values.len(), 3);
    }

    #[test]
    fn hermitian_jacobi_matches_known_spectrum() {
        // Pauli Y has eigenvalues -1, 1.
        let y =
            ComplexMatrix::from_rows(&[[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]);
        let v = hermitian_eigenvalues(&y).unwrap();
        assert!((v[0] + 1.0).abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);

        let rank_one =
            ComplexMatrix::outer(&[c(0.6, 0.0), c(0.0, 0.8)], &[c(0.6, 0.0), c(0.0, 0.8)]);
        let v = hermitian_eigenvalues(&rank_one).unwrap();
        assert!(v[0].abs() < 1e-15 && (v[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hermitian_eigenvectors_diagonalise() {
        let m = ComplexMatrix::from_rows(&[
            [c(2.0, 0.0), c(0.5, -1.0), c(0.0, 0.3)],
            [c(0.5, 1.0), c(-1.0, 0.0), c(0.2, 0.2)],
            [c(0.0, -0.3), c(0.2, -0.2), c(0.7, 0.0)],
        ]);
        let e = hermitian_eigen(&m).unwrap();
        let u = &e.vectors;
        assert!((&u.adjoint() * u).approx_eq(&ComplexMatrix::identity(3), 1e-14));
        let d = ComplexMatrix::diag(&e.values.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
        assert!(d.conjugate_by(u).unwrap().approx_eq(&m, 1e-13));
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }
}
