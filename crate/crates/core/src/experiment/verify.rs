//! Cross-checks of an experiment: the locality certificate plus grid
//! quadrature against every closed-form quantity.

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::run::Experiment;
use crate::error::Result;
use crate::graph::VertexSet;
use crate::nongauss::{
    negativity_trace, purity_nongaussian, quadrature_moment, wigner_grid, NonGaussMatrix, Quadrature, WignerKernel,
};
use crate::oracle::{
    grid_maximum, grid_minimum, grid_purity, integrate_grid, integrate_streaming, Integrand, QuadratureDomain,
};

pub const NORMALIZATION_TOL: f64 = 1e-6;
pub const PURITY_TOL: f64 = 1e-6;
/// Relative tolerance on quadrature moments.
pub const MOMENT_TOL: f64 = 1e-6;
pub const GAUSSIAN_GRID_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn within(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            value: deviation,
            tolerance,
            pass: deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Runs the certificate and oracle cross-checks for one configuration.
///
/// Every vertex gets a single-vertex grid at the configured resolution. One
/// pair of vertices, drawn with the configured seed, additionally gets a
/// streamed two-vertex normalisation check at the same resolution.
pub fn verify_experiment(config: &ExperimentConfig) -> Result<VerifyReport> {
    let exp = Experiment::new(config)?;
    let state = &exp.state;
    let m = state.graph().vertex_count();
    let mut checks = Vec::new();

    let cert = state.locality_certificate()?;
    checks.push(Check::within(
        "locality",
        cert.max_outside,
        crate::nongauss::LOCALITY_TOL,
    ));

    let (t, negative) = negativity_trace(state.covariance(), state.a())?;
    checks.push(Check {
        name: "full_state_negativity".into(),
        value: t,
        tolerance: 2.0,
        pass: negative,
    });

    for k in 0..m {
        let set = VertexSet::single(k);
        let (v, a) = state.reduce(&set)?;
        let axes = exp.grid_axes(&set)?;
        let grid = wigner_grid(&v, &a, &axes)?;
        let name = |what: &str| format!("v{k}/{what}");

        let norm = integrate_grid(&grid, Integrand::Density)?;
        checks.push(Check::within(
            name("normalization"),
            (norm - 1.0).abs(),
            NORMALIZATION_TOL,
        ));

        let purity = purity_nongaussian(&v, &a)?;
        checks.push(Check::within(
            name("purity"),
            (grid_purity(&grid)? - purity).abs(),
            PURITY_TOL,
        ));

        for (q, axis) in [(Quadrature::X, 0), (Quadrature::P, 1)] {
            for order in [2u32, 4] {
                let closed = quadrature_moment(&v, &a, 0, q, order)?;
                let numeric = integrate_grid(&grid, Integrand::Moment { axis, power: order })?;
                let label = format!("moment_{}{order}", if axis == 0 { 'x' } else { 'p' });
                checks.push(Check::within(
                    name(&label),
                    (numeric - closed).abs() / closed.abs().max(1.0),
                    MOMENT_TOL,
                ));
            }
        }

        let (_, flag) = negativity_trace(&v, &a)?;
        let grid_negative = grid_minimum(&grid).1 < -1e-12 * grid_maximum(&grid);
        checks.push(Check {
            name: name("negativity_agreement"),
            value: f64::from(u8::from(grid_negative)),
            tolerance: 0.0,
            pass: grid_negative == flag,
        });

        if !cert.allowed.contains(k) {
            let gaussian = wigner_grid(&v, &NonGaussMatrix::zeros(1), &axes)?;
            let diff = grid
                .values
                .iter()
                .zip(&gaussian.values)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            checks.push(Check::within(name("gaussian_grid"), diff, GAUSSIAN_GRID_TOL));
        }
    }

    if m >= 2 {
        let mut rng = StdRng::seed_from_u64(config.seed);
        let i = rng.random_range(0..m);
        let j = (i + rng.random_range(1..m)) % m;
        let set = VertexSet::new([i, j]);
        let (v, a) = state.reduce(&set)?;
        let mut axes = exp.grid_axes(&set)?;
        for axis in &mut axes {
            axis.npoints = config.outputs.grid.points.max(crate::oracle::MIN_POINTS);
        }
        let kernel = WignerKernel::new(&v, &a)?;
        let norm = integrate_streaming(&kernel, &QuadratureDomain::new(axes)?, Integrand::Density)?;
        let pair = set.to_vec();
        checks.push(Check::within(
            format!("v{}_v{}/normalization", pair[0], pair[1]),
            (norm - 1.0).abs(),
            NORMALIZATION_TOL,
        ));
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { checks, pass })
}
