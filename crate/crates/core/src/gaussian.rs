//! Gaussian graph states in the covariance-matrix picture.
//!
//! Quadratures are ordered `(x_1..x_m, p_1..p_m)` and normalised so that
//! `[x, p] = 2i`; the vacuum covariance matrix is the identity.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Tolerance on symplectic eigenvalues when testing purity.
pub const PURITY_EPS: f64 = 1e-10;

/// Per-vertex squeezing factors `s_k > 0`.
///
/// The initial covariance matrix is `diag(s_1..s_m, 1/s_1..1/s_m)`, so with
/// `s_k > 1` the p quadrature is the squeezed one.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezingSpec {
    factors: Vec<f64>,
}

impl SqueezingSpec {
    pub fn from_factors(factors: Vec<f64>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if let Some((vertex, &value)) = factors.iter().enumerate().find(|(_, s)| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::InvalidSqueezing { vertex, value });
        }
        Ok(Self { factors })
    }

    /// Squeezing given in decibels, `s = 10^(dB/10)`.
    pub fn from_db(db: &[f64]) -> Result<Self> {
        Self::from_factors(db.iter().map(|&d| db_to_factor(d)).collect())
    }

    pub fn uniform_db(m: usize, db: f64) -> Result<Self> {
        Self::from_db(&vec![db; m])
    }

    /// Exchanges the roles of the two quadratures (`s -> 1/s`).
    pub fn swapped(&self) -> Self {
        Self {
            factors: self.factors.iter().map(|s| s.recip()).collect(),
        }
    }

    pub fn factors(&self) -> &[f64] {
        &self.factors
    }

    pub fn vertex_count(&self) -> usize {
        self.factors.len()
    }
}

pub fn db_to_factor(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn factor_to_db(s: f64) -> f64 {
    10.0 * s.log10()
}

/// Real symmetric `2m x 2m` covariance matrix in `(x.., p..)` ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    m: usize,
    data: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Wraps a matrix after checking that it is square, even-sized and symmetric.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        let (r, c) = data.shape();
        if r != c {
            return Err(Error::DimensionMismatch { expected: r, got: c });
        }
        if r == 0 || r % 2 != 0 {
            return Err(Error::OddDimension(r));
        }
        let asym = max_asymmetry(&data);
        let scale = data.amax().max(1.0);
        if asym > 1e-12 * scale {
            return Err(Error::NotSymmetric(asym));
        }
        Ok(Self { m: r / 2, data })
    }

    pub fn vacuum(m: usize) -> Self {
        Self {
            m,
            data: DMatrix::identity(2 * m, 2 * m),
        }
    }

    /// Number of modes (vertices).
    pub fn modes(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.data
    }

    /// Sub-matrix on the vertices in `set`, in `(x.., p..)` order.
    pub fn reduce(&self, set: &VertexSet) -> Result<Self> {
        let data = reduce_matrix(&self.data, self.m, set)?;
        Ok(Self { m: set.len(), data })
    }

    pub fn inverse(&self) -> Result<DMatrix<f64>> {
        self.data.clone().cholesky().map(|c| c.inverse()).ok_or(Error::Singular)
    }

    pub fn determinant(&self) -> f64 {
        self.data.determinant()
    }

    /// Purity `det(V)^(-1/2)` of the Gaussian state.
    pub fn gaussian_purity(&self) -> Result<f64> {
        let det = self.determinant();
        if !(det > 0.0) {
            return Err(Error::NonPositiveDeterminant(det));
        }
        Ok(det.powf(-0.5))
    }

    /// Symplectic eigenvalues, sorted ascending, one per mode.
    ///
    /// Computed as the singular values of `V^(1/2) Ω V^(1/2)`, which come in
    /// equal pairs.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let eig = SymmetricEigen::new(self.data.clone());
        if eig.eigenvalues.iter().any(|&l| !(l > 0.0)) {
            return Err(Error::Singular);
        }
        let sqrt_diag = DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
        let root = &eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose();
        let k = &root * symplectic_form(self.m) * &root;
        let gram = k.transpose() * &k;
        let mut nu2: Vec<f64> = SymmetricEigen::new(gram)
            .eigenvalues
            .iter()
            .map(|&l| l.max(0.0))
            .collect();
        nu2.sort_by(f64::total_cmp);
        Ok(nu2.chunks(2).map(|pair| (0.5 * (pair[0] + pair[1])).sqrt()).collect())
    }

    /// True when every symplectic eigenvalue equals one within [`PURITY_EPS`].
    pub fn is_pure(&self) -> Result<bool> {
        Ok(self
            .symplectic_eigenvalues()?
            .iter()
            .all(|nu| (nu - 1.0).abs() <= PURITY_EPS))
    }
}

/// `Ω = [[0, I], [-I, 0]]` in `(x.., p..)` ordering.
pub fn symplectic_form(m: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * m, 2 * m);
    for k in 0..m {
        omega[(k, k + m)] = 1.0;
        omega[(k + m, k)] = -1.0;
    }
    omega
}

/// Symplectic matrix of the C_Z network of a graph, `G = [[I, A], [0, I]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticCZ {
    g: DMatrix<f64>,
}

impl SymplecticCZ {
    pub fn new(graph: &Graph) -> Self {
        let m = graph.vertex_count();
        let mut g = DMatrix::identity(2 * m, 2 * m);
        g.view_mut((0, m), (m, m)).copy_from(&graph.adjacency_matrix());
        Self { g }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.g
    }

    /// `Gᵗ V G`.
    pub fn conjugate(&self, v: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        if v.dim() != self.g.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.g.nrows(),
                got: v.dim(),
            });
        }
        let data = self.g.transpose() * v.matrix() * &self.g;
        CovarianceMatrix::new(data)
    }
}

/// Initial squeezed vacua `diag(s_1..s_m, 1/s_1..1/s_m)`.
pub fn v0_from_squeezing(spec: &SqueezingSpec) -> CovarianceMatrix {
    let s = spec.factors();
    let m = s.len();
    let diag: Vec<f64> = s.iter().copied().chain(s.iter().map(|x| x.recip())).collect();
    CovarianceMatrix {
        m,
        data: DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)),
    }
}

/// Covariance matrix of the graph state obtained by applying C_Z along every edge.
pub fn graph_state_covariance(v0: &CovarianceMatrix, graph: &Graph) -> Result<CovarianceMatrix> {
    let m = graph.vertex_count();
    if v0.modes() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: v0.modes(),
        });
    }
    SymplecticCZ::new(graph).conjugate(v0)
}

/// Selects rows and columns `{k, k+m : k ∈ set}` of a `2m x 2m` matrix.
pub(crate) fn reduce_matrix(data: &DMatrix<f64>, m: usize, set: &VertexSet) -> Result<DMatrix<f64>> {
    if set.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    set.check(m)?;
    let idx: Vec<usize> = set.iter().chain(set.iter().map(|k| k + m)).collect();
    Ok(DMatrix::from_fn(idx.len(), idx.len(), |i, j| data[(idx[i], idx[j])]))
}

fn max_asymmetry(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    worst
}
