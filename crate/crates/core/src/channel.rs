//! Single-subsystem dynamical maps and their extension to independent
//! subsystems.
//!
//! A map is stored as the four-index tensor `A[i, i', l, l']` acting as
//!
//! ```text
//! rho'[i, i'] = sum_{l, l'} A[i, i', l, l'] rho[l, l']
//! ```
//!
//! When every subsystem evolves under its own reservoir, the joint tensor is
//! the elementwise product of the factor tensors over composite indices, so
//! the joint dynamics follows from single-subsystem dynamics alone.

use num_complex::Complex64;

use crate::numerics::{hermitian_eigenvalues, ComplexMatrix};
use crate::state::DensityMatrix;
use crate::{Error, Result};

/// Tolerance for `sum K^dagger K = I`.
pub const TRACE_PRESERVATION_TOL: f64 = 1e-10;
/// Smallest Choi eigenvalue accepted as positive.
pub const CHOI_TOL: f64 = 1e-10;

/// Kraus operators of a trace-preserving channel.
#[derive(Debug, Clone)]
pub struct KrausSet {
    dim: usize,
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = operators
            .first()
            .ok_or_else(|| Error::Input("a Kraus set needs at least one operator".into()))?
            .rows();
        if let Some(bad) = operators
            .iter()
            .find(|k| k.rows() != dim || k.cols() != dim)
        {
            return Err(Error::dimension(
                format!("{dim}x{dim}"),
                format!("{}x{}", bad.rows(), bad.cols()),
            ));
        }
        let set = Self { dim, operators };
        let dev = set.completeness_deviation();
        if dev > TRACE_PRESERVATION_TOL {
            return Err(Error::Validation(format!(
                "Kraus operators are not trace preserving (deviation {dev:e})"
            )));
        }
        Ok(set)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// Largest entry of `sum K^dagger K - I`.
    pub fn completeness_deviation(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.operators {
            sum = &sum + &(&k.adjoint() * k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// `sum_k K rho K^dagger`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::dimension(self.dim, rho.dim()));
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.operators {
            out = &out + &rho.matrix().conjugate_by(k)?;
        }
        Ok(DensityMatrix::from_matrix_unchecked(out))
    }
}

/// Four-index tensor `A[i, i', l, l']` of a linear map on `dim x dim` matrices.
#[derive(Debug, Clone)]
pub struct DynamicalMap {
    dim: usize,
    tensor: Vec<Complex64>,
}

impl DynamicalMap {
    pub fn identity(dim: usize) -> Self {
        let mut map = Self {
            dim,
            tensor: vec![Complex64::new(0.0, 0.0); dim.pow(4)],
        };
        for i in 0..dim {
            for ip in 0..dim {
                let at = map.offset(i, ip, i, ip);
                map.tensor[at] = Complex64::new(1.0, 0.0);
            }
        }
        map
    }

    /// Builds a map from a raw tensor laid out as `((i * d + i') * d + l) * d + l'`.
    /// No physicality checks are made.
    pub fn from_tensor(dim: usize, tensor: Vec<Complex64>) -> Result<Self> {
        if tensor.len() != dim.pow(4) {
            return Err(Error::dimension(dim.pow(4), tensor.len()));
        }
        Ok(Self { dim, tensor })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn offset(&self, i: usize, ip: usize, l: usize, lp: usize) -> usize {
        let d = self.dim;
        ((i * d + ip) * d + l) * d + lp
    }

    #[inline]
    pub fn get(&self, i: usize, ip: usize, l: usize, lp: usize) -> Complex64 {
        self.tensor[self.offset(i, ip, l, lp)]
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim {
            return Err(Error::dimension(self.dim, rho.dim()));
        }
        let d = self.dim;
        let m = rho.matrix();
        let out = ComplexMatrix::from_fn(d, d, |i, ip| {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..d {
                for lp in 0..d {
                    let a = self.get(i, ip, l, lp);
                    if a != Complex64::new(0.0, 0.0) {
                        acc += a * m[(l, lp)];
                    }
                }
            }
            acc
        });
        Ok(DensityMatrix::from_matrix_unchecked(out))
    }

    /// Choi matrix `J[(l, i), (l', i')] = A[i, i', l, l']`.
    pub fn choi(&self) -> ComplexMatrix {
        let d = self.dim;
        ComplexMatrix::from_fn(d * d, d * d, |r, c| {
            let (l, i) = (r / d, r % d);
            let (lp, ip) = (c / d, c % d);
            self.get(i, ip, l, lp)
        })
    }

    /// Largest `|sum_i A[i, i, l, l'] - delta(l, l')|`.
    pub fn trace_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for l in 0..d {
            for lp in 0..d {
                let s: Complex64 = (0..d).map(|i| self.get(i, i, l, lp)).sum();
                let want = if l == lp { 1.0 } else { 0.0 };
                worst = worst.max((s - want).norm());
            }
        }
        worst
    }

    /// Largest `|A[i', i, l', l] - conj(A[i, i', l, l'])|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for ip in 0..d {
                for l in 0..d {
                    for lp in 0..d {
                        worst = worst
                            .max((self.get(ip, i, lp, l) - self.get(i, ip, l, lp).conj()).norm());
                    }
                }
            }
        }
        worst
    }

    /// Smallest eigenvalue of the Choi matrix.
    pub fn choi_min_eigenvalue(&self) -> Result<f64> {
        Ok(hermitian_eigenvalues(&self.choi())?[0])
    }

    /// Trace preserving, hermiticity preserving and completely positive
    /// within the module tolerances.
    pub fn is_cptp(&self) -> Result<bool> {
        Ok(self.trace_deviation() <= TRACE_PRESERVATION_TOL
            && self.hermiticity_deviation() <= 1e-12
            && self.choi_min_eigenvalue()? >= -CHOI_TOL)
    }

    pub fn max_abs_diff(&self, other: &DynamicalMap) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.tensor
            .iter()
            .zip(&other.tensor)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// `A[i, i', l, l'] = sum_k K_k[i, l] conj(K_k[i', l'])`.
pub fn from_kraus(kraus: &KrausSet) -> Result<DynamicalMap> {
    let dev = kraus.completeness_deviation();
    if dev > TRACE_PRESERVATION_TOL {
        return Err(Error::Validation(format!(
            "Kraus operators are not trace preserving (deviation {dev:e})"
        )));
    }
    let d = kraus.dim();
    let mut tensor = vec![Complex64::new(0.0, 0.0); d.pow(4)];
    for k in kraus.operators() {
        for i in 0..d {
            for ip in 0..d {
                for l in 0..d {
                    let a = k[(i, l)];
                    if a == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for lp in 0..d {
                        tensor[((i * d + ip) * d + l) * d + lp] += a * k[(ip, lp)].conj();
                    }
                }
            }
        }
    }
    Ok(DynamicalMap { dim: d, tensor })
}

pub fn apply(map: &DynamicalMap, rho: &DensityMatrix) -> Result<DensityMatrix> {
    map.apply(rho)
}

/// Joint map of independent subsystems: the elementwise product of factor
/// tensors, with the first factor as the slowest-varying composite index.
pub fn product_extend(maps: &[DynamicalMap]) -> Result<DynamicalMap> {
    if maps.is_empty() {
        return Err(Error::Input(
            "product extension needs at least one factor".into(),
        ));
    }
    let dims: Vec<usize> = maps.iter().map(DynamicalMap::dim).collect();
    let total: usize = dims.iter().product();

    // Mixed-radix digits of a composite index, first factor most significant.
    let digits = |mut idx: usize| -> Vec<usize> {
        let mut out = vec![0; dims.len()];
        for (slot, &d) in out.iter_mut().zip(&dims).rev() {
            *slot = idx % d;
            idx /= d;
        }
        out
    };
    let split: Vec<Vec<usize>> = (0..total).map(digits).collect();

    let mut tensor = Vec::with_capacity(total.pow(4));
    for i in 0..total {
        for ip in 0..total {
            for l in 0..total {
                for lp in 0..total {
                    let mut value = Complex64::new(1.0, 0.0);
                    for (f, map) in maps.iter().enumerate() {
                        value *= map.get(split[i][f], split[ip][f], split[l][f], split[lp][f]);
                        if value == Complex64::new(0.0, 0.0) {
                            break;
                        }
                    }
                    tensor.push(value);
                }
            }
        }
    }
    Ok(DynamicalMap { dim: total, tensor })
}
