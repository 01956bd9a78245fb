//! Non-Gaussian continuous-variable graph states.
//!
//! Builds Gaussian graph states from squeezed vacua and C_Z gates, adds or
//! subtracts a single photon in a vertex (or in a superposition of vertices),
//! and evaluates the resulting reduced Wigner functions together with
//! kurtosis, purity and negativity indicators. A single-photon operation
//! only changes vertices within two steps of where it acts; the
//! [`nongauss::locality_certificate`] checks this for concrete instances.
//!
//! Conventions: quadratures are ordered `(x_1..x_m, p_1..p_m)`, `[x, p] = 2i`
//! (vacuum variance 1), vertices are 0-based.

// `!(x > 0.0)` style checks reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod experiment;
pub mod gaussian;
pub mod graph;
pub mod nongauss;
pub mod oracle;
pub mod wick;

pub use error::{Error, Result};
pub use gaussian::{CovarianceMatrix, SqueezingSpec};
pub use graph::{Graph, VertexSet};
pub use nongauss::{ModeVector, NonGaussMatrix, OperationSign, PhotonGraphState, Quadrature};
