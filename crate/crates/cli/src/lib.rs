//! `dse solve` and `dse bench`.

pub mod config;

use std::fs;
use std::path::{Path, PathBuf};

use dse_core::bench::run_bench;
use dse_core::output::{write_history, write_solution};
use dse_core::{BenchReport, PropagatorSolution, Solver};
use thiserror::Error;

pub use config::{parse_config, CommandKind, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Clap(clap::Error),

    #[error("invalid `{key}`: {reason}")]
    Usage { key: String, reason: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Solver(dse_core::Error),
}

impl CliError {
    pub(crate) fn usage(key: &str, reason: impl Into<String>) -> Self {
        Self::Usage {
            key: key.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn from_core(e: dse_core::Error) -> Self {
        match e {
            dse_core::Error::Parameter { key, reason } => Self::usage(key, reason),
            other => Self::Solver(other),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Clap(e) => e.exit_code(),
            Self::Usage { .. } => 2,
            Self::Io { .. } => 3,
            Self::Solver(_) => 4,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn build_solver(cfg: &RunConfig) -> Result<Solver, CliError> {
    Solver::new(cfg.params, cfg.solver_options()).map_err(CliError::from_core)
}

/// Solves once and writes the solution and history CSV files.
pub fn cmd_solve(cfg: &RunConfig) -> Result<PropagatorSolution, CliError> {
    let solver = build_solver(cfg)?;
    let sol = solver
        .solve(&cfg.variant_with_threads())
        .map_err(CliError::Solver)?;
    write_solution(&cfg.out, &sol).map_err(io_err(&cfg.out))?;
    write_history(&cfg.history, &sol).map_err(io_err(&cfg.history))?;
    Ok(sol)
}

/// Runs the four-variant benchmark and writes the JSON report (and the text
/// table when requested).
pub fn cmd_bench(cfg: &RunConfig) -> Result<BenchReport, CliError> {
    let solver = build_solver(cfg)?;
    let (report, _) = run_bench(&solver, cfg.threads, cfg.repeat).map_err(CliError::Solver)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_text(&cfg.out, &(json + "\n"))?;
    if let Some(path) = &cfg.table {
        write_text(path, &report.table())?;
    }
    Ok(report)
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(path))?;
    }
    fs::write(path, text).map_err(io_err(path))
}
