//! Ready-made configurations for three standard scenarios.
//!
//! Topologies are qualitative stand-ins: a six-vertex chain, a seven-vertex
//! chain with a two-vertex superposition, and a 7x7 triangular lattice.
//! All initial modes are squeezed by 10 dB.

use super::config::{
    Coefficient, ExperimentConfig, GraphSpec, LatticeSpec, OperationConfig, OutputConfig, SqueezingConfig,
};
use crate::error::{Error, Result};
use crate::nongauss::OperationSign;

pub const PRESET_NAMES: [&str; 3] = ["fig1-chain", "fig2-superposition", "fig3-lattice"];

/// Side length of the `fig3-lattice` triangular lattice.
pub const LATTICE_SIDE: usize = 7;

pub fn preset(name: &str) -> Result<ExperimentConfig> {
    let per_vertex_grids = |m: usize| (0..m).map(|k| vec![k]).collect::<Vec<_>>();
    let config = match name {
        "fig1-chain" => ExperimentConfig {
            name: Some(name.into()),
            graph: GraphSpec::Lattice {
                lattice: LatticeSpec::Path { m: 6 },
            },
            squeezing: SqueezingConfig::uniform_db(10.0),
            operation: OperationConfig {
                sign: OperationSign::Subtract,
                coefficients: vec![Coefficient {
                    vertex: 0,
                    re: 1.0,
                    im: 0.0,
                }],
            },
            outputs: OutputConfig {
                grids: per_vertex_grids(6),
                ..OutputConfig::default()
            },
            seed: 0,
        },
        "fig2-superposition" => {
            let amp = std::f64::consts::FRAC_1_SQRT_2;
            ExperimentConfig {
                name: Some(name.into()),
                graph: GraphSpec::Lattice {
                    lattice: LatticeSpec::Path { m: 7 },
                },
                squeezing: SqueezingConfig::uniform_db(10.0),
                operation: OperationConfig {
                    sign: OperationSign::Subtract,
                    coefficients: vec![
                        Coefficient {
                            vertex: 0,
                            re: amp,
                            im: 0.0,
                        },
                        Coefficient {
                            vertex: 6,
                            re: amp,
                            im: 0.0,
                        },
                    ],
                },
                outputs: OutputConfig {
                    grids: per_vertex_grids(7),
                    ..OutputConfig::default()
                },
                seed: 0,
            }
        }
        "fig3-lattice" => ExperimentConfig {
            name: Some(name.into()),
            graph: GraphSpec::Lattice {
                lattice: LatticeSpec::Triangular {
                    rows: LATTICE_SIDE,
                    cols: LATTICE_SIDE,
                },
            },
            squeezing: SqueezingConfig::uniform_db(10.0),
            operation: OperationConfig {
                sign: OperationSign::Subtract,
                coefficients: vec![Coefficient {
                    vertex: (LATTICE_SIDE / 2) * LATTICE_SIDE + LATTICE_SIDE / 2,
                    re: 1.0,
                    im: 0.0,
                }],
            },
            outputs: OutputConfig::default(),
            seed: 0,
        },
        other => return Err(Error::UnknownPreset(other.into())),
    };
    Ok(config)
}
