//! Reduced Wigner functions of single-photon-added/subtracted Gaussian states.
//!
//! For a reduction with covariance `V` and correction matrix `A` on `n` vertices,
//!
//! ```text
//! W(β) = ½ [βᵗ V⁻¹AV⁻¹ β − tr(V⁻¹A) + 2] · exp(−½ βᵗV⁻¹β) / ((2π)ⁿ √det V)
//! ```
//!
//! with `β = (x_1..x_n, p_1..p_n)`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::amatrix::NonGaussMatrix;
use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;

/// Default half-width of grid axes, in standard deviations of the Gaussian part.
pub const DEFAULT_SIGMAS: f64 = 8.0;
/// Default number of points per grid axis.
pub const DEFAULT_POINTS: usize = 201;

/// Precomputed pieces of the Wigner function of one reduction.
#[derive(Debug, Clone)]
pub struct WignerKernel {
    n: usize,
    precision: DMatrix<f64>,
    correction: DMatrix<f64>,
    trace: f64,
    norm: f64,
}

impl WignerKernel {
    pub fn new(v: &CovarianceMatrix, a: &NonGaussMatrix) -> Result<Self> {
        if v.modes() != a.modes() {
            return Err(Error::DimensionMismatch {
                expected: v.modes(),
                got: a.modes(),
            });
        }
        let n = v.modes();
        let precision = v.inverse()?;
        let det = v.determinant();
        if !(det > 0.0) {
            return Err(Error::Singular);
        }
        let va = &precision * a.matrix();
        let trace = va.trace();
        let raw = &va * &precision;
        let correction = (&raw + raw.transpose()) * 0.5;
        let norm = ((2.0 * PI).powi(n as i32) * det.sqrt()).recip();
        Ok(Self {
            n,
            precision,
            correction,
            trace,
            norm,
        })
    }

    /// Number of vertices in the reduction.
    pub fn modes(&self) -> usize {
        self.n
    }

    /// `V⁻¹`.
    pub fn precision(&self) -> &DMatrix<f64> {
        &self.precision
    }

    /// `V⁻¹ A V⁻¹`.
    pub fn correction(&self) -> &DMatrix<f64> {
        &self.correction
    }

    /// `tr(V⁻¹ A)`.
    pub fn trace(&self) -> f64 {
        self.trace
    }

    /// Gaussian normalisation `1 / ((2π)ⁿ √det V)`.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Wigner function at `beta`, given in `(x.., p..)` order.
    pub fn value(&self, beta: &[f64]) -> f64 {
        let qk = quadratic_form(&self.precision, beta);
        let qm = quadratic_form(&self.correction, beta);
        0.5 * (qm - self.trace + 2.0) * (-0.5 * qk).exp() * self.norm
    }
}

#[inline]
fn quadratic_form(m: &DMatrix<f64>, x: &[f64]) -> f64 {
    let n = x.len();
    let mut total = 0.0;
    for j in 0..n {
        let mut row = 0.0;
        for i in 0..n {
            row += m[(i, j)] * x[i];
        }
        total += row * x[j];
    }
    total
}

/// Evaluates the Wigner function of a reduction at one phase-space point.
pub fn wigner_value(v: &CovarianceMatrix, a: &NonGaussMatrix, beta: &[f64]) -> Result<f64> {
    let kernel = WignerKernel::new(v, a)?;
    if beta.len() != 2 * kernel.modes() {
        return Err(Error::DimensionMismatch {
            expected: 2 * kernel.modes(),
            got: beta.len(),
        });
    }
    Ok(kernel.value(beta))
}

/// `tr(V⁻¹A)` and whether it exceeds 2, in which case `W(0) < 0`.
pub fn negativity_trace(v: &CovarianceMatrix, a: &NonGaussMatrix) -> Result<(f64, bool)> {
    let t = WignerKernel::new(v, a)?.trace();
    Ok((t, t > 2.0))
}

/// Evenly spaced axis including both end points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub npoints: usize,
}

impl GridAxis {
    pub fn new(min: f64, max: f64, npoints: usize) -> Result<Self> {
        let axis = Self { min, max, npoints };
        axis.validate()?;
        Ok(axis)
    }

    pub fn symmetric(half_width: f64, npoints: usize) -> Result<Self> {
        Self::new(-half_width, half_width, npoints)
    }

    pub fn validate(&self) -> Result<()> {
        if self.npoints < 2 {
            return Err(Error::InvalidAxis(format!(
                "need at least 2 points, got {}",
                self.npoints
            )));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::InvalidAxis(format!("bad range [{}, {}]", self.min, self.max)));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.max - self.min) / (self.npoints - 1) as f64
    }

    /// `i`-th point. The midpoint of a symmetric axis with an odd point count is exactly zero.
    #[inline]
    pub fn point(&self, i: usize) -> f64 {
        let last = (self.npoints - 1) as f64;
        let i = i as f64;
        ((last - i) * self.min + i * self.max) / last
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.npoints).map(|i| self.point(i))
    }
}

/// Dense Wigner function on a tensor grid.
///
/// Axes are ordered per vertex, `(x_1, p_1[, x_2, p_2])`; values are stored
/// row-major with the last axis varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub axes: Vec<GridAxis>,
    pub values: Vec<f64>,
}

impl WignerGrid {
    pub fn modes(&self) -> usize {
        self.axes.len() / 2
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid coordinates (per-vertex axis order) of the point with linear index `idx`.
    pub fn coordinates(&self, mut idx: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.axes.len()];
        for (d, axis) in self.axes.iter().enumerate().rev() {
            out[d] = axis.point(idx % axis.npoints);
            idx /= axis.npoints;
        }
        out
    }
}

/// Maps per-vertex grid order `(x_1, p_1, x_2, p_2)` to `(x_1, x_2, p_1, p_2)`.
pub fn grid_to_phase_space(coords: &[f64], out: &mut [f64]) {
    let n = coords.len() / 2;
    for k in 0..n {
        out[k] = coords[2 * k];
        out[n + k] = coords[2 * k + 1];
    }
}

/// Axes spanning `±sigmas` standard deviations of each quadrature of `v`.
pub fn default_axes(v: &CovarianceMatrix, sigmas: f64, npoints: usize) -> Result<Vec<GridAxis>> {
    let n = v.modes();
    let mut axes = Vec::with_capacity(2 * n);
    for k in 0..n {
        for idx in [k, k + n] {
            let var = v.matrix()[(idx, idx)];
            if !(var > 0.0) {
                return Err(Error::Singular);
            }
            axes.push(GridAxis::symmetric(sigmas * var.sqrt(), npoints)?);
        }
    }
    Ok(axes)
}

/// Evaluates the Wigner function of a 1- or 2-vertex reduction on a tensor grid.
///
/// Every point is evaluated independently, so the result does not depend on
/// how the work is scheduled across threads.
pub fn wigner_grid(v: &CovarianceMatrix, a: &NonGaussMatrix, axes: &[GridAxis]) -> Result<WignerGrid> {
    let n = v.modes();
    if n == 0 || n > 2 {
        return Err(Error::GridTooLarge(n));
    }
    if axes.len() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            got: axes.len(),
        });
    }
    for axis in axes {
        axis.validate()?;
    }
    let kernel = WignerKernel::new(v, a)?;
    let inner: usize = axes[1..].iter().map(|a| a.npoints).product();
    let total = inner * axes[0].npoints;
    let mut values = vec![0.0; total];
    let template = WignerGrid {
        axes: axes.to_vec(),
        values: Vec::new(),
    };
    values.par_chunks_mut(inner).enumerate().for_each(|(i0, chunk)| {
        let mut beta = vec![0.0; 2 * n];
        for (j, out) in chunk.iter_mut().enumerate() {
            let coords = template.coordinates(i0 * inner + j);
            grid_to_phase_space(&coords, &mut beta);
            *out = kernel.value(&beta);
        }
    });
    Ok(WignerGrid {
        axes: axes.to_vec(),
        values,
    })
}
