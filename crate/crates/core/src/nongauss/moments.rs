//! Closed-form quadrature moments, kurtosis and purity.
//!
//! The Wigner function is a Gaussian density times the polynomial
//! `½ βᵗMβ − t/2 + 1`, so every expectation reduces to Gaussian moments of
//! order at most six, evaluated with Isserlis' theorem.

use serde::{Deserialize, Serialize};

use super::amatrix::NonGaussMatrix;
use super::wigner::WignerKernel;
use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;
use crate::graph::VertexSet;
use crate::wick;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadrature {
    X,
    P,
}

impl Quadrature {
    /// Index of this quadrature of local vertex `k` in an `n`-vertex reduction.
    pub fn index(self, k: usize, n: usize) -> usize {
        match self {
            Quadrature::X => k,
            Quadrature::P => k + n,
        }
    }
}

/// `⟨q^order⟩` for quadrature `q` of the `vertex`-th member of the reduction.
pub fn quadrature_moment(
    v: &CovarianceMatrix,
    a: &NonGaussMatrix,
    vertex: usize,
    q: Quadrature,
    order: u32,
) -> Result<f64> {
    if !(1..=4).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    let n = v.modes();
    if vertex >= n {
        return Err(Error::VertexOutOfRange { index: vertex, m: n });
    }
    if order % 2 == 1 {
        return Ok(0.0);
    }
    let kernel = WignerKernel::new(v, a)?;
    let idx = q.index(vertex, n);
    let k = order as usize;
    let cov = v.matrix();
    let gaussian = wick::gaussian_moment(cov, &vec![idx; k]);
    let quad = wick::power_times_quadratic(cov, kernel.correction(), idx, k);
    Ok(gaussian * (1.0 - 0.5 * kernel.trace()) + 0.5 * quad)
}

/// `⟨q⁴⟩ / ⟨q²⟩² − 3`.
pub fn excess_kurtosis(v: &CovarianceMatrix, a: &NonGaussMatrix, vertex: usize, q: Quadrature) -> Result<f64> {
    let m2 = quadrature_moment(v, a, vertex, q, 2)?;
    if !(m2 > 0.0) {
        return Err(Error::DegenerateMoment(m2));
    }
    let m4 = quadrature_moment(v, a, vertex, q, 4)?;
    Ok(m4 / (m2 * m2) - 3.0)
}

/// Purity `(4π)ⁿ ∫ W²` of a reduction.
///
/// `W²` is again a Gaussian (covariance `V/2`) times a squared polynomial,
/// which collapses to `μ = det(V)^(-1/2) · E_{V/2}[(½βᵗMβ − t/2 + 1)²]`.
pub fn purity_nongaussian(v: &CovarianceMatrix, a: &NonGaussMatrix) -> Result<f64> {
    let kernel = WignerKernel::new(v, a)?;
    let half = v.matrix() * 0.5;
    let m = kernel.correction();
    let c0 = 1.0 - 0.5 * kernel.trace();
    let e_quad = m.component_mul(&half).sum();
    let e_quad2 = wick::quadratic_squared(&half, m);
    let e_poly2 = 0.25 * e_quad2 + c0 * e_quad + c0 * c0;
    Ok(v.gaussian_purity()? * e_poly2)
}

/// Single-vertex indicators reported for every vertex of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexMetrics {
    pub kurtosis_x: f64,
    pub kurtosis_p: f64,
    pub purity: f64,
    pub purity_gaussian: f64,
    pub relative_purity: f64,
    pub negativity_trace: f64,
    pub negative: bool,
}

/// Metrics of the single-vertex reduction on vertex `k` of the full state.
pub fn vertex_metrics(v: &CovarianceMatrix, a: &NonGaussMatrix, k: usize) -> Result<VertexMetrics> {
    let set = VertexSet::single(k);
    let vk = v.reduce(&set)?;
    let ak = a.reduce(&set)?;
    single_mode_metrics(&vk, &ak)
}

pub fn single_mode_metrics(vk: &CovarianceMatrix, ak: &NonGaussMatrix) -> Result<VertexMetrics> {
    let purity = purity_nongaussian(vk, ak)?;
    let purity_gaussian = vk.gaussian_purity()?;
    let t = WignerKernel::new(vk, ak)?.trace();
    Ok(VertexMetrics {
        kurtosis_x: excess_kurtosis(vk, ak, 0, Quadrature::X)?,
        kurtosis_p: excess_kurtosis(vk, ak, 0, Quadrature::P)?,
        purity,
        purity_gaussian,
        relative_purity: purity / purity_gaussian,
        negativity_trace: t,
        negative: t > 2.0,
    })
}
