//! Config-driven experiment runner behind the `cvgraph` command-line tool.

mod config;
mod presets;
mod run;
mod verify;

pub use config::{
    Coefficient, DbSpec, ExperimentConfig, GraphSpec, GridConfig, LatticeSpec, OperationConfig, OutputConfig,
    SqueezingConfig, RENORMALIZE_TOL,
};
pub use presets::{preset, LATTICE_SIDE, PRESET_NAMES};
pub use run::{
    grid_file_name, run_experiment, write_grid, write_grid_csv, Experiment, ExperimentReport, GridEntry,
    NegativitySummary, VertexReport, UNAFFECTED_TOL,
};
pub use verify::{verify_experiment, Check, VerifyReport};
