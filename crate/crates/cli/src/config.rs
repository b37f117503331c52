use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use dse_core::{AlgorithmVariant, ModelParams, SolverOptions};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "dse",
    version,
    about = "Quark gap equation with Ball-Chiu vertex"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    Solve,
    Bench,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve once and write the solution and iteration history as CSV
    Solve(Flags),
    /// Time all four algorithm variants and write a JSON report
    Bench(Flags),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// TOML file with any of the keys below (flags take precedence)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Interaction strength D (GeV²)
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    /// Interaction width ω (GeV)
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Current quark mass (GeV)
    #[arg(long, allow_negative_numbers = true)]
    pub m0: Option<f64>,
    /// Renormalization constant
    #[arg(long, allow_negative_numbers = true)]
    pub z1: Option<f64>,
    /// Convergence accuracy on max |ΔA| and max |ΔB|
    #[arg(long, allow_negative_numbers = true)]
    pub xi: Option<f64>,
    /// External momentum points
    #[arg(long)]
    pub n: Option<usize>,
    /// Radial Gauss-Legendre nodes
    #[arg(long)]
    pub m_rad: Option<usize>,
    /// Angular Gauss-Chebyshev nodes
    #[arg(long)]
    pub m_ang: Option<usize>,
    /// Lower grid bound p² (GeV²)
    #[arg(long, allow_negative_numbers = true)]
    pub p2_min: Option<f64>,
    /// Upper grid bound p² (GeV²)
    #[arg(long, allow_negative_numbers = true)]
    pub p2_max: Option<f64>,
    /// search-seq, indexed-seq, search-par or indexed-par
    #[arg(long)]
    pub variant: Option<String>,
    /// Worker threads for parallel variants (default: SOLVER_THREADS, then all cores)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Solution CSV (solve) or JSON report (bench)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Iteration history CSV (solve)
    #[arg(long)]
    pub history: Option<PathBuf>,
    /// Text table (bench)
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Probe momenta as log10(p / GeV), comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub probes: Option<Vec<f64>>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Mixing weight of the new iterate, 1 = plain substitution
    #[arg(long)]
    pub relaxation: Option<f64>,
    /// Timed runs per variant; the fastest is reported
    #[arg(long)]
    pub repeat: Option<usize>,
    /// Reserved; the solver is deterministic
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Same keys as [`Flags`], read from a TOML file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    d: Option<f64>,
    omega: Option<f64>,
    m0: Option<f64>,
    z1: Option<f64>,
    xi: Option<f64>,
    n: Option<usize>,
    m_rad: Option<usize>,
    m_ang: Option<usize>,
    p2_min: Option<f64>,
    p2_max: Option<f64>,
    variant: Option<String>,
    threads: Option<usize>,
    out: Option<PathBuf>,
    history: Option<PathBuf>,
    table: Option<PathBuf>,
    probes: Option<Vec<f64>>,
    max_iter: Option<usize>,
    relaxation: Option<f64>,
    repeat: Option<usize>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: ModelParams,
    pub variant: AlgorithmVariant,
    pub threads: Option<usize>,
    pub out: PathBuf,
    pub history: PathBuf,
    pub table: Option<PathBuf>,
    /// log10(p / GeV)
    pub probes_log10_p: Vec<f64>,
    pub max_iter: usize,
    pub relaxation: f64,
    pub repeat: usize,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn defaults(kind: CommandKind) -> Self {
        let options = SolverOptions::default();
        Self {
            params: ModelParams::default(),
            variant: AlgorithmVariant::INDEXED_PAR,
            threads: None,
            out: PathBuf::from(match kind {
                CommandKind::Solve => "solution.csv",
                CommandKind::Bench => "bench.json",
            }),
            history: PathBuf::from("history.csv"),
            table: None,
            probes_log10_p: options
                .probes_p2
                .iter()
                .map(|p2| 0.5 * p2.log10())
                .collect(),
            max_iter: options.max_iter,
            relaxation: options.relaxation,
            repeat: 1,
            seed: None,
        }
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            max_iter: self.max_iter,
            relaxation: self.relaxation,
            probes_p2: self
                .probes_log10_p
                .iter()
                .map(|lp| 10f64.powf(2.0 * lp))
                .collect(),
        }
    }

    pub fn variant_with_threads(&self) -> AlgorithmVariant {
        self.variant.with_threads(self.threads)
    }

    fn validate(&self) -> Result<(), CliError> {
        self.params.validate().map_err(CliError::from_core)?;
        if self.max_iter == 0 {
            return Err(CliError::usage("max_iter", "must be at least 1"));
        }
        if !(self.relaxation > 0.0 && self.relaxation <= 1.0) {
            return Err(CliError::usage("relaxation", "must lie in (0, 1]"));
        }
        if self.repeat == 0 {
            return Err(CliError::usage("repeat", "must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(CliError::usage("threads", "must be at least 1"));
        }
        if self.probes_log10_p.iter().any(|p| !p.is_finite()) {
            return Err(CliError::usage("probes", "must be finite"));
        }
        Ok(())
    }
}

macro_rules! overlay {
    ($cfg:ident, $src:expr, [$($param:ident),*], [$($field:ident),*]) => {{
        let src = $src;
        $(if let Some(v) = src.$param { $cfg.params.$param = v; })*
        $(if let Some(v) = src.$field { $cfg.$field = v; })*
        if let Some(v) = src.variant {
            $cfg.variant = v.parse().map_err(CliError::from_core)?;
        }
        if let Some(v) = src.threads { $cfg.threads = Some(v); }
        if let Some(v) = src.table { $cfg.table = Some(v); }
        if let Some(v) = src.probes { $cfg.probes_log10_p = v; }
        if let Some(v) = src.seed { $cfg.seed = Some(v); }
    }};
}

fn read_file_config(path: &Path) -> Result<FileConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    toml::from_str(&text).map_err(|e| CliError::Usage {
        key: "config".into(),
        reason: format!("{}: {}", path.display(), e.message()),
    })
}

/// Builds the run configuration with precedence defaults < config file < flags.
pub fn resolve(kind: CommandKind, flags: Flags) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::defaults(kind);
    if let Some(path) = &flags.config {
        let file = read_file_config(path)?;
        overlay!(
            cfg,
            file,
            [d, omega, m0, z1, xi, n, m_rad, m_ang, p2_min, p2_max],
            [out, history, max_iter, relaxation, repeat]
        );
    }
    overlay!(
        cfg,
        flags,
        [d, omega, m0, z1, xi, n, m_rad, m_ang, p2_min, p2_max],
        [out, history, max_iter, relaxation, repeat]
    );
    cfg.validate()?;
    Ok(cfg)
}

/// Parses `argv` (program name first) into a subcommand and its configuration.
pub fn parse_config<I, T>(argv: I) -> Result<(CommandKind, RunConfig), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(CliError::Clap)?;
    match cli.command {
        Command::Solve(flags) => Ok((CommandKind::Solve, resolve(CommandKind::Solve, flags)?)),
        Command::Bench(flags) => Ok((CommandKind::Bench, resolve(CommandKind::Bench, flags)?)),
    }
}
