use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::nongauss::{
    default_axes, negativity_trace, wigner_grid, GridAxis, LocalityCertificate, PhotonGraphState, VertexMetrics,
    WignerGrid,
};
use crate::oracle::{grid_maximum, grid_minimum, integrate_grid, Integrand};

/// Vertices outside the affected region must reproduce the Gaussian values to this precision.
pub const UNAFFECTED_TOL: f64 = 1e-10;

/// A parsed and validated experiment, ready to evaluate.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub state: PhotonGraphState,
    pub warnings: Vec<String>,
}

impl Experiment {
    pub fn new(config: &ExperimentConfig) -> Result<Self> {
        let graph = config.graph.build()?;
        let m = graph.vertex_count();
        let squeezing = config.squeezing.build(m)?;
        let (mode, warning) = config.operation.build(m)?;
        for set in &config.outputs.grids {
            if set.is_empty() || set.len() > 2 {
                return Err(Error::Config(format!(
                    "grid vertex sets must hold one or two vertices, got {set:?}"
                )));
            }
            VertexSet::new(set.iter().copied()).check(m)?;
        }
        let grid = config.outputs.grid;
        if !(grid.sigmas > 0.0) || grid.points < 2 || grid.points_two_mode < 2 {
            return Err(Error::Config(format!("invalid grid parameters {grid:?}")));
        }
        let state = PhotonGraphState::new(graph, &squeezing, mode, config.operation.sign)?;
        Ok(Self {
            config: config.clone(),
            state,
            warnings: warning.into_iter().collect(),
        })
    }

    /// Default axes for a 1- or 2-vertex grid on `set`.
    pub fn grid_axes(&self, set: &VertexSet) -> Result<Vec<GridAxis>> {
        let g = self.config.outputs.grid;
        let points = if set.len() == 1 { g.points } else { g.points_two_mode };
        default_axes(&self.state.covariance().reduce(set)?, g.sigmas, points)
    }

    pub fn grid(&self, set: &VertexSet) -> Result<WignerGrid> {
        let (v, a) = self.state.reduce(set)?;
        wigner_grid(&v, &a, &self.grid_axes(set)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexReport {
    pub vertex: usize,
    /// Graph distance to the nearest vertex of the operation's support.
    pub distance: Option<usize>,
    pub affected: bool,
    pub metrics: VertexMetrics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NegativitySummary {
    pub trace: f64,
    pub negative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridEntry {
    pub vertices: Vec<usize>,
    pub file: Option<String>,
    pub axes: Vec<GridAxis>,
    pub rows: usize,
    pub integral: f64,
    pub minimum: f64,
    pub maximum: f64,
}

/// Everything an experiment produces. Contains no timestamps, so equal
/// configurations give byte-identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub warnings: Vec<String>,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub success_trace: f64,
    pub full_state: NegativitySummary,
    pub locality: LocalityCertificate,
    pub vertices: Vec<VertexReport>,
    pub invariant_failures: Vec<String>,
    pub grids: Vec<GridEntry>,
}

impl ExperimentReport {
    /// True when the locality certificate and every per-vertex check passed.
    pub fn certified(&self) -> bool {
        self.locality.pass && self.invariant_failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// Runs an experiment. Grids are evaluated for every declared vertex set and
/// written as CSV into `out_dir` when one is given.
pub fn run_experiment(config: &ExperimentConfig, out_dir: Option<&Path>) -> Result<ExperimentReport> {
    let exp = Experiment::new(config)?;
    let state = &exp.state;
    let graph = state.graph();
    let m = graph.vertex_count();
    let support = state.mode().support();
    let distances = graph.distances_from(&support)?;
    let locality = state.locality_certificate()?;

    let vertices: Vec<VertexReport> = if config.outputs.metrics {
        (0..m)
            .into_par_iter()
            .map(|k| {
                Ok(VertexReport {
                    vertex: k,
                    distance: distances[k],
                    affected: locality.allowed.contains(k),
                    metrics: state.vertex_metrics(k)?,
                })
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let mut invariant_failures = Vec::new();
    for r in vertices.iter().filter(|r| !r.affected) {
        let mt = &r.metrics;
        if (mt.relative_purity - 1.0).abs() > UNAFFECTED_TOL
            || mt.kurtosis_x.abs() > UNAFFECTED_TOL
            || mt.kurtosis_p.abs() > UNAFFECTED_TOL
        {
            invariant_failures.push(format!(
                "vertex {} lies outside the affected region but has relative purity {} and kurtosis ({}, {})",
                r.vertex, mt.relative_purity, mt.kurtosis_x, mt.kurtosis_p
            ));
        }
    }

    let (trace, negative) = negativity_trace(state.covariance(), state.a())?;

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    }
    let mut grids = Vec::with_capacity(config.outputs.grids.len());
    for set in &config.outputs.grids {
        let vs = VertexSet::new(set.iter().copied());
        let grid = exp.grid(&vs)?;
        let file = match out_dir {
            Some(dir) => {
                let name = grid_file_name(&vs);
                write_grid_csv(&grid, &dir.join(&name))?;
                Some(name)
            }
            None => None,
        };
        grids.push(GridEntry {
            vertices: vs.to_vec(),
            file,
            axes: grid.axes.clone(),
            rows: grid.len(),
            integral: integrate_grid(&grid, Integrand::Density)?,
            minimum: grid_minimum(&grid).1,
            maximum: grid_maximum(&grid),
        });
    }

    Ok(ExperimentReport {
        config: config.clone(),
        warnings: exp.warnings.clone(),
        vertex_count: m,
        edge_count: graph.edge_count(),
        success_trace: state.success_trace(),
        full_state: NegativitySummary { trace, negative },
        locality,
        vertices,
        invariant_failures,
        grids,
    })
}

pub fn grid_file_name(set: &VertexSet) -> String {
    let parts: Vec<String> = set.iter().map(|v| format!("v{v}")).collect();
    format!("wigner_{}.csv", parts.join("_"))
}

/// Writes a grid as CSV: header `x,p,w` (one vertex) or `x1,p1,x2,p2,w`
/// (two vertices), one row per point in row-major order, 17 significant digits.
pub fn write_grid_csv(grid: &WignerGrid, path: &Path) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let file = fs::File::create(path).map_err(io)?;
    let mut w = BufWriter::new(file);
    write_grid(grid, &mut w).map_err(io)?;
    w.flush().map_err(io)
}

pub fn write_grid<W: Write>(grid: &WignerGrid, w: &mut W) -> std::io::Result<()> {
    let header = match grid.modes() {
        1 => "x,p,w",
        _ => "x1,p1,x2,p2,w",
    };
    writeln!(w, "{header}")?;
    for (i, value) in grid.values.iter().enumerate() {
        for c in grid.coordinates(i) {
            write!(w, "{c:.16e},")?;
        }
        writeln!(w, "{value:.16e}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::preset;

    #[test]
    fn chain_report() {
        let mut config = preset("fig1-chain").unwrap();
        config.outputs.grids.clear();
        let report = run_experiment(&config, None).unwrap();
        assert!(report.certified());
        assert_eq!(report.vertices.len(), 6);
        assert!(report.full_state.negative);
        let affected: Vec<_> = report.vertices.iter().map(|v| v.affected).collect();
        assert_eq!(affected, vec![true, true, true, false, false, false]);
        assert_eq!(report.vertices[4].distance, Some(4));
    }

    #[test]
    fn csv_layout() {
        let v = crate::gaussian::CovarianceMatrix::vacuum(1);
        let a = crate::nongauss::NonGaussMatrix::zeros(1);
        let axes = [GridAxis::symmetric(1.0, 3).unwrap(); 2];
        let grid = wigner_grid(&v, &a, &axes).unwrap();
        let mut buf = Vec::new();
        write_grid(&grid, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 10);
        assert_eq!(lines[0], "x,p,w");
        assert_eq!(lines[1].split(',').next().unwrap(), "-1.0000000000000000e0");
        assert_eq!(
            lines[5],
            format!("0.0000000000000000e0,0.0000000000000000e0,{:.16e}", grid.values[4])
        );
    }

    #[test]
    fn rejects_oversized_grid_sets() {
        let mut config = preset("fig1-chain").unwrap();
        config.outputs.grids = vec![vec![0, 1, 2]];
        assert!(matches!(Experiment::new(&config), Err(Error::Config(_))));
        config.outputs.grids = vec![vec![9]];
        assert!(Experiment::new(&config).is_err());
    }

    #[test]
    fn vacuum_subtraction_is_a_physics_error() {
        let mut config = preset("fig1-chain").unwrap();
        config.squeezing = super::super::config::SqueezingConfig::uniform_db(0.0);
        config.graph = super::super::config::GraphSpec::Edges(crate::graph::EdgeList { m: 6, edges: vec![] });
        assert!(matches!(
            run_experiment(&config, None),
            Err(Error::VanishingSuccessProbability { .. })
        ));
    }
}
