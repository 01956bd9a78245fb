//! Brute-force phase-space quadrature, used to cross-check the closed forms.
//!
//! All sums are trapezoid sums over evenly spaced tensor grids and run in a
//! fixed order, so results are reproducible bit for bit.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nongauss::{GridAxis, WignerGrid, WignerKernel};

/// Minimum number of points per axis accepted by a [`QuadratureDomain`].
pub const MIN_POINTS: usize = 51;

/// Lines of a streamed grid whose Gaussian exponent stays below this value
/// everywhere are skipped, as are the parts of a line below it; with at most
/// 201⁴ points and `e^-60 < 1e-26` their total contribution is far below 1e-12.
const NEGLIGIBLE_EXPONENT: f64 = -60.0;

/// Points between direct evaluations of the exponential in streamed lines.
const REANCHOR: usize = 16;

/// Tensor-product domain for quadrature, axes in per-vertex `(x, p)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureDomain {
    axes: Vec<GridAxis>,
}

impl QuadratureDomain {
    pub fn new(axes: Vec<GridAxis>) -> Result<Self> {
        if axes.is_empty() || !axes.len().is_multiple_of(2) {
            return Err(Error::InvalidAxis(format!(
                "need an even number of axes, got {}",
                axes.len()
            )));
        }
        for axis in &axes {
            axis.validate()?;
            if axis.npoints < MIN_POINTS {
                return Err(Error::InvalidAxis(format!(
                    "quadrature needs at least {MIN_POINTS} points per axis, got {}",
                    axis.npoints
                )));
            }
        }
        Ok(Self { axes })
    }

    pub fn axes(&self) -> &[GridAxis] {
        &self.axes
    }

    pub fn cell_volume(&self) -> f64 {
        self.axes.iter().map(GridAxis::step).product()
    }
}

/// What to integrate against the Wigner function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrand {
    /// `∫ W`
    Density,
    /// `∫ W²`
    Squared,
    /// `∫ q^power W` with `q` the coordinate of grid axis `axis`.
    Moment { axis: usize, power: u32 },
}

impl Integrand {
    #[inline]
    fn apply(self, w: f64, coords: &[f64]) -> f64 {
        match self {
            Integrand::Density => w,
            Integrand::Squared => w * w,
            Integrand::Moment { axis, power } => coords[axis].powi(power as i32) * w,
        }
    }

    fn check(self, naxes: usize) -> Result<()> {
        match self {
            Integrand::Moment { axis, .. } if axis >= naxes => Err(Error::InvalidAxis(format!(
                "moment axis {axis} out of range for {naxes} axes"
            ))),
            Integrand::Moment { power, .. } if power > 4 => Err(Error::UnsupportedOrder(power)),
            _ => Ok(()),
        }
    }
}

#[inline]
fn trapezoid_weight(axis: &GridAxis, i: usize) -> f64 {
    if i == 0 || i + 1 == axis.npoints {
        0.5
    } else {
        1.0
    }
}

/// Trapezoid integral of a materialised grid, summed in row-major order.
pub fn integrate_grid(grid: &WignerGrid, integrand: Integrand) -> Result<f64> {
    integrand.check(grid.axes.len())?;
    let expected: usize = grid.axes.iter().map(|a| a.npoints).product();
    if expected != grid.values.len() {
        return Err(Error::DimensionMismatch {
            expected,
            got: grid.values.len(),
        });
    }
    let d = grid.axes.len();
    let mut index = vec![0usize; d];
    let mut coords: Vec<f64> = grid.axes.iter().map(|a| a.point(0)).collect();
    let mut total = 0.0;
    for &w in &grid.values {
        let weight: f64 = grid
            .axes
            .iter()
            .zip(&index)
            .map(|(axis, &i)| trapezoid_weight(axis, i))
            .product();
        total += weight * integrand.apply(w, &coords);
        // odometer increment, last axis fastest
        for ax in (0..d).rev() {
            index[ax] += 1;
            if index[ax] < grid.axes[ax].npoints {
                coords[ax] = grid.axes[ax].point(index[ax]);
                break;
            }
            index[ax] = 0;
            coords[ax] = grid.axes[ax].point(0);
        }
    }
    let volume: f64 = grid.axes.iter().map(GridAxis::step).product();
    Ok(total * volume)
}

/// Purity estimate `(4π)ⁿ ∫ W²` from a grid.
pub fn grid_purity(grid: &WignerGrid) -> Result<f64> {
    Ok((4.0 * PI).powi(grid.modes() as i32) * integrate_grid(grid, Integrand::Squared)?)
}

/// Location (grid coordinates) and value of the smallest grid entry; ties go
/// to the lowest linear index.
pub fn grid_minimum(grid: &WignerGrid) -> (Vec<f64>, f64) {
    let (idx, value) = grid.values.iter().enumerate().fold(
        (0, f64::INFINITY),
        |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) },
    );
    (grid.coordinates(idx), value)
}

pub fn grid_maximum(grid: &WignerGrid) -> f64 {
    grid.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Integrates a 2-vertex grid over the second vertex's axes, leaving a
/// 1-vertex grid on the first vertex's axes.
pub fn marginalize_second(grid: &WignerGrid) -> Result<WignerGrid> {
    if grid.modes() != 2 {
        return Err(Error::GridTooLarge(grid.modes()));
    }
    let (ax, ap) = (grid.axes[2], grid.axes[3]);
    let inner = ax.npoints * ap.npoints;
    let outer = grid.axes[0].npoints * grid.axes[1].npoints;
    let vol = ax.step() * ap.step();
    let values = (0..outer)
        .map(|o| {
            let block = &grid.values[o * inner..(o + 1) * inner];
            let mut total = 0.0;
            for i in 0..ax.npoints {
                for j in 0..ap.npoints {
                    total += trapezoid_weight(&ax, i) * trapezoid_weight(&ap, j) * block[i * ap.npoints + j];
                }
            }
            total * vol
        })
        .collect();
    Ok(WignerGrid {
        axes: grid.axes[..2].to_vec(),
        values,
    })
}

/// Trapezoid integral over a domain without materialising the grid.
///
/// Intended for two-vertex domains at full resolution (201⁴ points). Each line
/// along the last axis evaluates the Gaussian exponent as a quadratic in the
/// line coordinate and skips points where it is negligible. Lines are summed
/// in a fixed order, independent of the number of threads.
pub fn integrate_streaming(kernel: &WignerKernel, domain: &QuadratureDomain, integrand: Integrand) -> Result<f64> {
    let axes = domain.axes();
    let d = axes.len();
    if d != 2 * kernel.modes() {
        return Err(Error::DimensionMismatch {
            expected: 2 * kernel.modes(),
            got: d,
        });
    }
    integrand.check(d)?;
    let n = kernel.modes();
    let last = axes[d - 1];
    let outer_axes = &axes[..d - 1];
    let outer_counts: Vec<usize> = outer_axes.iter().map(|a| a.npoints).collect();
    let lines_per_first: usize = outer_counts[1..].iter().product();

    let partial: Vec<f64> = (0..outer_counts[0])
        .into_par_iter()
        .map(|i0| {
            let mut coords = vec![0.0; d];
            let mut beta = vec![0.0; d];
            let mut sum = 0.0;
            for rest in 0..lines_per_first {
                let mut r = rest;
                let mut weight = 1.0;
                for ax in (1..d - 1).rev() {
                    let i = r % outer_counts[ax];
                    r /= outer_counts[ax];
                    coords[ax] = outer_axes[ax].point(i);
                    weight *= trapezoid_weight(&outer_axes[ax], i);
                }
                coords[0] = outer_axes[0].point(i0);
                weight *= trapezoid_weight(&outer_axes[0], i0);
                coords[d - 1] = 0.0;
                crate::nongauss::grid_to_phase_space(&coords, &mut beta);
                sum += weight * line_integral(kernel, &beta, n, &last, integrand, &mut coords);
            }
            sum
        })
        .collect();
    Ok(partial.iter().sum::<f64>() * domain.cell_volume())
}

/// Trapezoid-weighted sum along the last axis (`p` of the last vertex, the
/// last phase-space coordinate). `beta` holds the line's base point with
/// that coordinate set to zero.
fn line_integral(
    kernel: &WignerKernel,
    beta: &[f64],
    n: usize,
    axis: &GridAxis,
    integrand: Integrand,
    coords: &mut [f64],
) -> f64 {
    let j = 2 * n - 1;
    let k = kernel.precision();
    let m = kernel.correction();
    let (mut k0, mut kj, mut m0, mut mj) = (0.0, 0.0, 0.0, 0.0);
    for a in 0..=j {
        let (mut kr, mut mr) = (0.0, 0.0);
        for b in 0..=j {
            kr += k[(a, b)] * beta[b];
            mr += m[(a, b)] * beta[b];
        }
        k0 += kr * beta[a];
        m0 += mr * beta[a];
        if a == j {
            kj = kr;
            mj = mr;
        }
    }
    let kjj = k[(j, j)];
    let mjj = m[(j, j)];
    // exponent e(u) = e0 + e1 u + e2 u² with e2 < 0
    let (e0, e1, e2) = (-0.5 * k0, -kj, -0.5 * kjj);
    let peak = e0 - e1 * e1 / (4.0 * e2);
    if peak < NEGLIGIBLE_EXPONENT {
        return 0.0;
    }
    // points with e(u) >= NEGLIGIBLE_EXPONENT lie in [u_lo, u_hi]
    let disc = ((NEGLIGIBLE_EXPONENT - peak) / e2).sqrt();
    let centre = -e1 / (2.0 * e2);
    let h = axis.step();
    let lo = (((centre - disc) - axis.min) / h).floor().max(0.0) as usize;
    let hi = ((((centre + disc) - axis.min) / h).ceil().max(0.0) as usize).min(axis.npoints - 1);
    if lo > hi {
        return 0.0;
    }
    let shift = 2.0 - kernel.trace();
    let norm = 0.5 * kernel.norm();
    // exp(e(u)) is advanced multiplicatively between anchors:
    // E_{i+1} = E_i R_i,  R_{i+1} = R_i D,  D = exp(2 e2 h²)
    let step_ratio = (2.0 * e2 * h * h).exp();
    let last = coords.len() - 1;
    let mut sum = 0.0;
    let (mut e_val, mut ratio) = (0.0, 0.0);
    for (n_since, i) in (lo..=hi).enumerate() {
        let u = axis.point(i);
        if n_since % REANCHOR == 0 {
            e_val = (e0 + u * (e1 + u * e2)).exp();
            ratio = (e1 * h + e2 * (2.0 * u * h + h * h)).exp();
        }
        let poly = m0 + u * (2.0 * mj + u * mjj) + shift;
        let w = norm * poly * e_val;
        let weight = trapezoid_weight(axis, i);
        sum += weight
            * match integrand {
                Integrand::Density => w,
                _ => {
                    coords[last] = u;
                    integrand.apply(w, coords)
                }
            };
        e_val *= ratio;
        ratio *= step_ratio;
    }
    sum
}
