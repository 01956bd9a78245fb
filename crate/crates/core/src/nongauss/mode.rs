use std::fmt;

use nalgebra::{Complex, DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Tolerance on `Σ|c_j|² = 1` for a mode vector.
pub const NORM_TOL: f64 = 1e-12;

/// Photon addition (creation operator) or subtraction (annihilation operator).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperationSign {
    Add,
    Subtract,
}

impl OperationSign {
    /// `+1` for addition, `-1` for subtraction.
    pub fn factor(self) -> f64 {
        match self {
            OperationSign::Add => 1.0,
            OperationSign::Subtract => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            OperationSign::Add => '+',
            OperationSign::Subtract => '-',
        }
    }
}

impl fmt::Display for OperationSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OperationSign::Add => "add",
            OperationSign::Subtract => "subtract",
        })
    }
}

/// Normalised complex coefficients over the vertices, defining the mode in
/// which the photon is added or subtracted.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeVector {
    coeffs: Vec<Complex<f64>>,
}

impl ModeVector {
    /// Accepts coefficients whose squared norm is one within [`NORM_TOL`].
    pub fn new(coeffs: Vec<Complex<f64>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let norm2 = norm_sqr(&coeffs);
        if !((norm2 - 1.0).abs() <= NORM_TOL) {
            return Err(Error::UnnormalizedMode(norm2));
        }
        Ok(Self { coeffs })
    }

    /// Rescales arbitrary non-zero coefficients to unit norm.
    pub fn normalized(coeffs: Vec<Complex<f64>>) -> Result<Self> {
        let norm2 = norm_sqr(&coeffs);
        if !(norm2 > 0.0 && norm2.is_finite()) {
            return Err(Error::UnnormalizedMode(norm2));
        }
        let scale = norm2.sqrt().recip();
        Self::new(coeffs.into_iter().map(|c| c * scale).collect())
    }

    /// The mode of a single vertex `j`.
    pub fn vertex(m: usize, j: usize) -> Result<Self> {
        if j >= m {
            return Err(Error::VertexOutOfRange { index: j, m });
        }
        let mut coeffs = vec![Complex::new(0.0, 0.0); m];
        coeffs[j] = Complex::new(1.0, 0.0);
        Self::new(coeffs)
    }

    /// Balanced real superposition of the given vertices.
    pub fn balanced(m: usize, vertices: &VertexSet) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        vertices.check(m)?;
        let amp = (vertices.len() as f64).sqrt().recip();
        let coeffs = (0..m)
            .map(|k| Complex::new(if vertices.contains(k) { amp } else { 0.0 }, 0.0))
            .collect();
        Self::normalized(coeffs)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex<f64>] {
        &self.coeffs
    }

    /// Vertices with a non-zero coefficient.
    pub fn support(&self) -> VertexSet {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(k, _)| k)
            .collect()
    }

    /// Rank-2 orthogonal projector `g gᵗ + g' g'ᵗ` on the mode's phase space,
    /// with `g = (Re c, Im c)` and `g' = (-Im c, Re c)`.
    pub fn projector(&self) -> DMatrix<f64> {
        let m = self.coeffs.len();
        let g = DVector::from_iterator(
            2 * m,
            self.coeffs.iter().map(|c| c.re).chain(self.coeffs.iter().map(|c| c.im)),
        );
        let gp = DVector::from_iterator(
            2 * m,
            self.coeffs
                .iter()
                .map(|c| -c.im)
                .chain(self.coeffs.iter().map(|c| c.re)),
        );
        &g * g.transpose() + &gp * gp.transpose()
    }
}

fn norm_sqr(coeffs: &[Complex<f64>]) -> f64 {
    coeffs.iter().map(|c| c.norm_sqr()).sum()
}
