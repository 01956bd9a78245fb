use nalgebra::{DMatrix, SymmetricEigen};

use super::mode::{ModeVector, OperationSign};
use crate::error::{Error, Result};
use crate::gaussian::{reduce_matrix, CovarianceMatrix};
use crate::graph::VertexSet;

/// Below this value of `tr[(V ± 1) Π]` the conditional operation has no
/// chance of succeeding (e.g. subtraction from vacuum).
pub const SUCCESS_THRESHOLD: f64 = 1e-12;

/// The rank-2 correction matrix carrying every non-Gaussian feature of a
/// photon-added or photon-subtracted Gaussian state.
#[derive(Debug, Clone, PartialEq)]
pub struct NonGaussMatrix {
    m: usize,
    data: DMatrix<f64>,
}

impl NonGaussMatrix {
    /// Wraps a `2m x 2m` matrix without any structural check.
    pub fn from_matrix(data: DMatrix<f64>) -> Result<Self> {
        let (r, c) = data.shape();
        if r != c {
            return Err(Error::DimensionMismatch { expected: r, got: c });
        }
        if r == 0 || r % 2 != 0 {
            return Err(Error::OddDimension(r));
        }
        Ok(Self { m: r / 2, data })
    }

    /// All-zero matrix; the Wigner function then reduces to the Gaussian one.
    pub fn zeros(m: usize) -> Self {
        Self {
            m,
            data: DMatrix::zeros(2 * m, 2 * m),
        }
    }

    pub fn modes(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn reduce(&self, set: &VertexSet) -> Result<Self> {
        Ok(Self {
            m: set.len(),
            data: reduce_matrix(&self.data, self.m, set)?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0.0)
    }

    /// Eigenvalues sorted in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.data.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }
}

/// Outcome of [`build_a`]: the matrix and the normalisation `tr[(V ± 1) Π]`,
/// which is proportional to the success probability.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonOperation {
    pub a: NonGaussMatrix,
    pub success_trace: f64,
}

/// `A = 2 (V ± 1) Π (V ± 1) / tr[(V ± 1) Π]` with `Π` the mode projector.
pub fn build_a(v: &CovarianceMatrix, mode: &ModeVector, sign: OperationSign) -> Result<PhotonOperation> {
    let m = v.modes();
    if mode.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: mode.len(),
        });
    }
    let shift = DMatrix::<f64>::identity(2 * m, 2 * m) * sign.factor();
    let b = v.matrix() + shift;
    let proj = mode.projector();
    let trace = (&b * &proj).trace();
    if !(trace > SUCCESS_THRESHOLD) {
        return Err(Error::VanishingSuccessProbability {
            sign: sign.symbol(),
            trace,
        });
    }
    let raw = &b * &proj * &b * (2.0 / trace);
    let data = (&raw + raw.transpose()) * 0.5;
    Ok(PhotonOperation {
        a: NonGaussMatrix { m, data },
        success_trace: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{graph_state_covariance, v0_from_squeezing, SqueezingSpec};
    use crate::graph::Graph;

    #[test]
    fn vacuum_addition() {
        let v = CovarianceMatrix::vacuum(1);
        let op = build_a(&v, &ModeVector::vertex(1, 0).unwrap(), OperationSign::Add).unwrap();
        assert_eq!(op.a.matrix(), &(DMatrix::identity(2, 2) * 2.0));
        assert_eq!(op.success_trace, 4.0);
        let single = op.a.reduce(&VertexSet::single(0)).unwrap();
        assert_eq!(single.matrix(), &(DMatrix::identity(2, 2) * 2.0));
    }

    #[test]
    fn subtraction_from_vacuum_fails() {
        let v = CovarianceMatrix::vacuum(3);
        let err = build_a(&v, &ModeVector::vertex(3, 1).unwrap(), OperationSign::Subtract).unwrap_err();
        assert!(matches!(err, Error::VanishingSuccessProbability { sign: '-', .. }));
    }

    #[test]
    fn support_confined_to_two_ball() {
        let g = Graph::path(7).unwrap();
        let v0 = v0_from_squeezing(&SqueezingSpec::uniform_db(7, 10.0).unwrap());
        let v = graph_state_covariance(&v0, &g).unwrap();
        let op = build_a(&v, &ModeVector::vertex(7, 3).unwrap(), OperationSign::Subtract).unwrap();
        let allowed = g.closed_two_neighborhood(&VertexSet::single(3)).unwrap();
        assert_eq!(allowed, VertexSet::new([1, 2, 3, 4, 5]));
        for r in 0..14 {
            for c in 0..14 {
                if !allowed.contains(r % 7) || !allowed.contains(c % 7) {
                    assert_eq!(op.a.matrix()[(r, c)], 0.0, "({r},{c})");
                }
            }
        }
        let far = op.a.reduce(&VertexSet::new([0, 6])).unwrap();
        assert!(far.is_zero());
        assert_eq!(op.a.reduce(&g.all_vertices()).unwrap(), op.a);
    }

    #[test]
    fn rank_two_psd() {
        let g = Graph::triangular_lattice(3, 3).unwrap();
        let v0 = v0_from_squeezing(&SqueezingSpec::from_factors((1..=9).map(|k| 1.0 + k as f64).collect()).unwrap());
        let v = graph_state_covariance(&v0, &g).unwrap();
        let mode = ModeVector::balanced(9, &VertexSet::new([0, 8])).unwrap();
        for sign in [OperationSign::Add, OperationSign::Subtract] {
            let ev = build_a(&v, &mode, sign).unwrap().a.eigenvalues();
            assert!(ev[1] > 0.0);
            assert!(ev[2].abs() <= 1e-10 * ev[0]);
            assert!(ev.last().unwrap() >= &(-1e-10 * ev[0]));
        }
    }

    #[test]
    fn mode_dimension_must_match() {
        let v = CovarianceMatrix::vacuum(2);
        assert!(build_a(&v, &ModeVector::vertex(3, 0).unwrap(), OperationSign::Add).is_err());
    }
}
