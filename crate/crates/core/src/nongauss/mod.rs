//! Single-photon addition and subtraction on Gaussian graph states.

mod amatrix;
mod locality;
mod mode;
mod moments;
mod wigner;

pub use amatrix::{build_a, NonGaussMatrix, PhotonOperation, SUCCESS_THRESHOLD};
pub use locality::{locality_certificate, LocalityCertificate, LOCALITY_TOL};
pub use mode::{ModeVector, OperationSign, NORM_TOL};
pub use moments::{
    excess_kurtosis, purity_nongaussian, quadrature_moment, single_mode_metrics, vertex_metrics, Quadrature,
    VertexMetrics,
};
pub use wigner::{
    default_axes, grid_to_phase_space, negativity_trace, wigner_grid, wigner_value, GridAxis, WignerGrid, WignerKernel,
    DEFAULT_POINTS, DEFAULT_SIGMAS,
};

use crate::error::Result;
use crate::gaussian::{graph_state_covariance, v0_from_squeezing, CovarianceMatrix, SqueezingSpec};
use crate::graph::{Graph, VertexSet};

/// A graph state after one photon has been added or subtracted.
#[derive(Debug, Clone)]
pub struct PhotonGraphState {
    graph: Graph,
    covariance: CovarianceMatrix,
    mode: ModeVector,
    sign: OperationSign,
    operation: PhotonOperation,
}

impl PhotonGraphState {
    pub fn new(graph: Graph, squeezing: &SqueezingSpec, mode: ModeVector, sign: OperationSign) -> Result<Self> {
        let v0 = v0_from_squeezing(squeezing);
        let covariance = graph_state_covariance(&v0, &graph)?;
        let operation = build_a(&covariance, &mode, sign)?;
        Ok(Self {
            graph,
            covariance,
            mode,
            sign,
            operation,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn covariance(&self) -> &CovarianceMatrix {
        &self.covariance
    }

    pub fn a(&self) -> &NonGaussMatrix {
        &self.operation.a
    }

    pub fn mode(&self) -> &ModeVector {
        &self.mode
    }

    pub fn sign(&self) -> OperationSign {
        self.sign
    }

    pub fn success_trace(&self) -> f64 {
        self.operation.success_trace
    }

    /// `(V_S, A_S)` for a vertex subset `S`.
    pub fn reduce(&self, set: &VertexSet) -> Result<(CovarianceMatrix, NonGaussMatrix)> {
        Ok((self.covariance.reduce(set)?, self.operation.a.reduce(set)?))
    }

    pub fn vertex_metrics(&self, k: usize) -> Result<VertexMetrics> {
        vertex_metrics(&self.covariance, &self.operation.a, k)
    }

    pub fn locality_certificate(&self) -> Result<LocalityCertificate> {
        locality_certificate(&self.graph, &self.operation.a, &self.mode.support())
    }

    /// The closed two-neighbourhood of the mode's support.
    pub fn affected_vertices(&self) -> Result<VertexSet> {
        self.graph.closed_two_neighborhood(&self.mode.support())
    }
}
