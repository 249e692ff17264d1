//! Small self-contained numerical toolkit: dense complex matrices, eigenvalues,
//! a fixed-step RK4 integrator and trapezoidal product integration for
//! convolution-type Volterra integro-differential equations.

mod eigen;
mod matrix;
mod ode;
mod volterra;

pub use eigen::{
    eigenvalues, hermitian_eigen, hermitian_eigenvalues, EigenResult, HermitianEigen,
    DEFAULT_MAX_ITER, DEFAULT_TOL,
};
pub use matrix::ComplexMatrix;
pub use ode::{ode_rk4, Trajectory};
pub use volterra::{volterra_product_integration, ComplexTrajectory};

/// Number of uniform steps of size at most `h` covering `span`, and the
/// resulting step. Spans that are an integer multiple of `h` (up to roundoff)
/// keep `h` unchanged.
pub(crate) fn uniform_steps(span: f64, h: f64) -> (usize, f64) {
    let ratio = span / h;
    let n = (ratio - 1e-9 * ratio.max(1.0)).ceil().max(1.0) as usize;
    (n, span / n as f64)
}

/// Bisection for a sign change of `f` on `[a, b]`; stops once the bracket is
/// narrower than `tol`. Returns `None` if `f(a)` and `f(b)` share a sign.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    while (b - a).abs() > tol {
        let mid = 0.5 * (a + b);
        if mid <= a.min(b) || mid >= a.max(b) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Some(0.5 * (a + b))
}
