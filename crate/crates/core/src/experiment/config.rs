use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::SqueezingSpec;
use crate::graph::{EdgeList, Graph};
use crate::nongauss::{ModeVector, OperationSign, Quadrature, DEFAULT_POINTS, DEFAULT_SIGMAS};

/// Coefficient norms further than this from one are renormalised with a warning.
pub const RENORMALIZE_TOL: f64 = 1e-9;

/// Declarative description of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub graph: GraphSpec,
    pub squeezing: SqueezingConfig,
    pub operation: OperationConfig,
    #[serde(default)]
    pub outputs: OutputConfig,
    #[serde(default)]
    pub seed: u64,
}

/// Either an inline edge list or a generated lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Edges(EdgeList),
    Lattice { lattice: LatticeSpec },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LatticeSpec {
    Path { m: usize },
    Cycle { m: usize },
    Complete { m: usize },
    Triangular { rows: usize, cols: usize },
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Edges(list) => list.to_graph(),
            GraphSpec::Lattice { lattice } => match *lattice {
                LatticeSpec::Path { m } => Graph::path(m),
                LatticeSpec::Cycle { m } => Graph::cycle(m),
                LatticeSpec::Complete { m } => Graph::complete(m),
                LatticeSpec::Triangular { rows, cols } => Graph::triangular_lattice(rows, cols),
            },
        }
    }
}

/// Squeezing in dB (one value for all vertices, or one per vertex) or as raw
/// variance factors. Exactly one of `db` and `factors` must be given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SqueezingConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub db: Option<DbSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<f64>>,
    /// Which quadrature of the initial modes is squeezed.
    #[serde(default = "default_squeezed")]
    pub squeezed_quadrature: Quadrature,
}

fn default_squeezed() -> Quadrature {
    Quadrature::P
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DbSpec {
    Uniform(f64),
    PerVertex(Vec<f64>),
}

impl SqueezingConfig {
    pub fn uniform_db(db: f64) -> Self {
        Self {
            db: Some(DbSpec::Uniform(db)),
            factors: None,
            squeezed_quadrature: Quadrature::P,
        }
    }

    pub fn build(&self, m: usize) -> Result<SqueezingSpec> {
        let check_len = |len: usize| {
            if len == m {
                Ok(())
            } else {
                Err(Error::Config(format!("squeezing lists {len} values for {m} vertices")))
            }
        };
        let spec = match (&self.db, &self.factors) {
            (Some(DbSpec::Uniform(db)), None) => SqueezingSpec::uniform_db(m, *db)?,
            (Some(DbSpec::PerVertex(db)), None) => {
                check_len(db.len())?;
                SqueezingSpec::from_db(db)?
            }
            (None, Some(factors)) => {
                check_len(factors.len())?;
                SqueezingSpec::from_factors(factors.clone())?
            }
            _ => return Err(Error::Config("squeezing needs exactly one of 'db' or 'factors'".into())),
        };
        Ok(match self.squeezed_quadrature {
            Quadrature::P => spec,
            Quadrature::X => spec.swapped(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperationConfig {
    pub sign: OperationSign,
    pub coefficients: Vec<Coefficient>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coefficient {
    pub vertex: usize,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl OperationConfig {
    /// Builds the mode vector; the second value carries a warning when the
    /// coefficients had to be renormalised.
    pub fn build(&self, m: usize) -> Result<(ModeVector, Option<String>)> {
        if self.coefficients.is_empty() {
            return Err(Error::Config("operation lists no coefficients".into()));
        }
        let mut coeffs = vec![Complex::new(0.0, 0.0); m];
        let mut seen = vec![false; m];
        for c in &self.coefficients {
            if c.vertex >= m {
                return Err(Error::VertexOutOfRange { index: c.vertex, m });
            }
            if std::mem::replace(&mut seen[c.vertex], true) {
                return Err(Error::Config(format!(
                    "vertex {} listed twice in coefficients",
                    c.vertex
                )));
            }
            coeffs[c.vertex] = Complex::new(c.re, c.im);
        }
        let norm2: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        let warning = ((norm2 - 1.0).abs() > RENORMALIZE_TOL)
            .then(|| format!("operation coefficients had squared norm {norm2}; renormalised to 1"));
        Ok((ModeVector::normalized(coeffs)?, warning))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "yes")]
    pub metrics: bool,
    /// Vertex sets (one or two vertices each) whose Wigner grids are written.
    #[serde(default)]
    pub grids: Vec<Vec<usize>>,
    #[serde(default)]
    pub grid: GridConfig,
}

fn yes() -> bool {
    true
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            metrics: true,
            grids: Vec::new(),
            grid: GridConfig::default(),
        }
    }
}

/// Grid extent in standard deviations and resolution per axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_sigmas")]
    pub sigmas: f64,
    /// Points per axis for single-vertex grids.
    #[serde(default = "default_points")]
    pub points: usize,
    /// Points per axis for two-vertex grids (the file holds `points⁴` rows).
    #[serde(default = "default_points_two_mode")]
    pub points_two_mode: usize,
}

fn default_sigmas() -> f64 {
    DEFAULT_SIGMAS
}

fn default_points() -> usize {
    DEFAULT_POINTS
}

fn default_points_two_mode() -> usize {
    41
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            sigmas: DEFAULT_SIGMAS,
            points: DEFAULT_POINTS,
            points_two_mode: default_points_two_mode(),
        }
    }
}

impl ExperimentConfig {
    /// Parses JSON; errors carry serde's line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises")
    }
}
