use serde::{Deserialize, Serialize};

use super::amatrix::NonGaussMatrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest entry tolerated outside the closed two-neighbourhood.
pub const LOCALITY_TOL: f64 = 1e-12;

/// Checks, for one concrete instance, that a single-photon operation on the
/// vertices in `support` leaves every vertex more than two steps away
/// untouched: all rows and columns of `A` belonging to such vertices vanish.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalityCertificate {
    pub support: VertexSet,
    pub allowed: VertexSet,
    pub max_outside: f64,
    pub pass: bool,
}

pub fn locality_certificate(graph: &Graph, a: &NonGaussMatrix, support: &VertexSet) -> Result<LocalityCertificate> {
    let m = graph.vertex_count();
    if a.modes() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: a.modes(),
        });
    }
    let allowed = graph.closed_two_neighborhood(support)?;
    let outside: Vec<usize> = (0..m)
        .filter(|k| !allowed.contains(*k))
        .flat_map(|k| [k, k + m])
        .collect();
    let data = a.matrix();
    let mut max_outside = 0.0f64;
    for &r in &outside {
        for c in 0..2 * m {
            max_outside = max_outside.max(data[(r, c)].abs()).max(data[(c, r)].abs());
        }
    }
    Ok(LocalityCertificate {
        support: support.clone(),
        allowed,
        pass: max_outside <= LOCALITY_TOL,
        max_outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{graph_state_covariance, v0_from_squeezing, SqueezingSpec};
    use crate::nongauss::{build_a, ModeVector, OperationSign};
    use nalgebra::DMatrix;

    fn state(g: &Graph, db: f64) -> crate::gaussian::CovarianceMatrix {
        let v0 = v0_from_squeezing(&SqueezingSpec::uniform_db(g.vertex_count(), db).unwrap());
        graph_state_covariance(&v0, g).unwrap()
    }

    #[test]
    fn path_end_subtraction() {
        let g = Graph::path(6).unwrap();
        let v = state(&g, 10.0);
        let mode = ModeVector::vertex(6, 0).unwrap();
        let a = build_a(&v, &mode, OperationSign::Subtract).unwrap().a;
        let cert = locality_certificate(&g, &a, &mode.support()).unwrap();
        assert_eq!(cert.allowed, VertexSet::new([0, 1, 2]));
        assert_eq!(cert.max_outside, 0.0);
        assert!(cert.pass);
    }

    #[test]
    fn complete_graph_is_vacuous() {
        let g = Graph::complete(5).unwrap();
        let v = state(&g, 3.0);
        let mode = ModeVector::vertex(5, 2).unwrap();
        let a = build_a(&v, &mode, OperationSign::Add).unwrap().a;
        let cert = locality_certificate(&g, &a, &mode.support()).unwrap();
        assert_eq!(cert.allowed, g.all_vertices());
        assert!(cert.pass);
    }

    #[test]
    fn superposition_of_path_ends() {
        let g = Graph::path(7).unwrap();
        let v = state(&g, 10.0);
        let mode = ModeVector::balanced(7, &VertexSet::new([0, 6])).unwrap();
        let a = build_a(&v, &mode, OperationSign::Subtract).unwrap().a;
        let cert = locality_certificate(&g, &a, &mode.support()).unwrap();
        assert_eq!(cert.allowed, VertexSet::new([0, 1, 2, 4, 5, 6]));
        assert!(cert.pass);
        assert!(a.reduce(&VertexSet::single(3)).unwrap().is_zero());
    }

    #[test]
    fn detects_violation() {
        let g = Graph::path(5).unwrap();
        let mut data = DMatrix::zeros(10, 10);
        data[(4, 9)] = 1e-6;
        data[(9, 4)] = 1e-6;
        let a = NonGaussMatrix::from_matrix(data).unwrap();
        let cert = locality_certificate(&g, &a, &VertexSet::single(0)).unwrap();
        assert!(!cert.pass);
        assert_eq!(cert.max_outside, 1e-6);
    }
}
