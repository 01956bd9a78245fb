use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cvgraph::experiment::{preset, run_experiment, verify_experiment, ExperimentConfig, PRESET_NAMES};
use cvgraph::Error;

/// Environment variable holding the worker thread count.
const THREADS_ENV: &str = "CVGRAPH_THREADS";

const EXIT_CERTIFICATE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cvgraph",
    version,
    about = "Photon-added and photon-subtracted CV graph states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write its report (and grids, with --out-dir).
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Print or save one of the built-in configurations.
    Preset {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(PRESET_NAMES))]
        name: String,
        #[arg(long)]
        emit_config: Option<PathBuf>,
    },
    /// Run the locality certificate and quadrature cross-checks only.
    Verify {
        #[arg(long)]
        config: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, Error> {
    configure_threads()?;
    match command {
        Command::Run { config, out_dir } => {
            let config = load_config(&config)?;
            let report = run_experiment(&config, out_dir.as_deref())?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let json = report.to_json();
            match &out_dir {
                Some(dir) => {
                    let path = dir.join("report.json");
                    std::fs::write(&path, json + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    eprintln!("wrote {}", path.display());
                }
                None => println!("{json}"),
            }
            if !report.certified() {
                eprintln!(
                    "certificate failure: max |A| outside = {:e}",
                    report.locality.max_outside
                );
                for f in &report.invariant_failures {
                    eprintln!("  {f}");
                }
                return Ok(ExitCode::from(EXIT_CERTIFICATE));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Preset { name, emit_config } => {
            let json = preset(&name)?.to_json() + "\n";
            match emit_config {
                Some(path) => std::fs::write(&path, json).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
                None => print!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { config } => {
            let config = load_config(&config)?;
            let report = verify_experiment(&config)?;
            for c in &report.checks {
                println!(
                    "{} {:<28} {:>12.3e} (tol {:.0e})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.value,
                    c.tolerance
                );
            }
            let failed = report.failures().count();
            println!("{} checks, {} failed", report.checks.len(), failed);
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_CERTIFICATE)
            })
        }
    }
}

fn load_config(path: &Path) -> Result<ExperimentConfig, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ExperimentConfig::from_json(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be an integer >= 1, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}
