//! Batch driver for the anosov-lab experiments: each subcommand writes one
//! deterministic result file and a PASS/FAIL summary.

pub mod commands;
pub mod config;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use config::{Format, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },

    #[error(transparent)]
    Lab(#[from] anosov_lab::LabError),

    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Parser)]
#[command(name = "anosov-lab", version, about = "Contact surgery experiments on the genus-2 unit tangent bundle")]
pub struct Cli {
    /// JSON run configuration; omitted fields take their defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory, overriding `output.dir`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Master seed, overriding `cones.seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Result file format, overriding `output.format`.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Frame-flow structure equations.
    #[command(subcommand)]
    Frames(FramesAction),
    /// Octagon group of the genus-2 surface.
    #[command(subcommand)]
    Surface(SurfaceAction),
    /// Gluing identities, time-change bound and normalization.
    #[command(subcommand)]
    Surgery(SurgeryAction),
    /// Cone certificates and cone flips.
    #[command(subcommand)]
    Cones(ConesAction),
    /// Closed-geodesic and disjoint-class censuses.
    #[command(subcommand)]
    Census(CensusAction),
    /// Rational tori of the surgered fiber flow.
    #[command(subcommand)]
    Farey(FareyAction),
    /// Lyapunov bound, growth labels and bound sequence.
    #[command(subcommand)]
    Entropy(EntropyAction),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum FramesAction {
    /// Bracket and semigroup residuals of the frame flow.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum SurfaceAction {
    /// Side pairings, relation residual and systole.
    Build,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum SurgeryAction {
    /// Gluing identities, time-change sup and normalization constant.
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum ConesAction {
    /// Cone certificate over a seeded ensemble, or the flip for q < 0.
    Certify,
    /// Certificate verdicts over the (q, ε) grid.
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CensusAction {
    /// Closed geodesics up to length L with orbit types.
    Geodesics,
    /// Classes disjoint from the twisted geodesic, by word length.
    Disjoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum FareyAction {
    /// Rational tori and periodic orbits up to period T.
    Run,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum EntropyAction {
    /// Lyapunov floor, entropy fit, growth labels and bound sequence.
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Frames(FramesAction::Check) => "frames check",
            Command::Surface(SurfaceAction::Build) => "surface build",
            Command::Surgery(SurgeryAction::Validate) => "surgery validate",
            Command::Cones(ConesAction::Certify) => "cones certify",
            Command::Cones(ConesAction::Sweep) => "cones sweep",
            Command::Census(CensusAction::Geodesics) => "census geodesics",
            Command::Census(CensusAction::Disjoint) => "census disjoint",
            Command::Farey(FareyAction::Run) => "farey run",
            Command::Entropy(EntropyAction::Report) => "entropy report",
        }
    }

    /// File stem of the result files.
    pub fn stem(&self) -> String {
        self.name().replace(' ', "-")
    }
}

/// Machine-readable outcome of one subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub subcommand: String,
    pub pass: bool,
    pub metrics: BTreeMap<String, serde_json::Value>,
}

/// Summary plus the result in both formats.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub summary: Summary,
    pub csv: String,
    pub json: serde_json::Value,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv.clone(),
            Format::Json => to_json(&self.json),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("results serialize");
    s.push('\n');
    s
}

/// Effective configuration: file or defaults, then flag overrides, then validation.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(out) = &cli.out {
        config.output.dir = out.clone();
    }
    if let Some(seed) = cli.seed {
        config.cones.seed = seed;
    }
    if let Some(format) = cli.format {
        config.output.format = format;
    }
    config.validate()?;
    Ok(config)
}

/// Runs `command` on a pool of `workers` threads.
pub fn execute(command: Command, config: &RunConfig, workers: Option<usize>) -> Result<Outcome, CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        pool = pool.num_threads(n.max(1));
    }
    let pool = pool.build().map_err(|e| CliError::Config { path: "workers".into(), reason: e.to_string() })?;
    pool.install(|| commands::run(command, config))
}

/// Writes `<stem>.<format>` and `<stem>.summary.json` into `dir`.
pub fn write_outputs(dir: &Path, command: Command, outcome: &Outcome, format: Format) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let result = dir.join(format!("{}.{ext}", command.stem()));
    let summary = dir.join(format!("{}.summary.json", command.stem()));
    for (path, body) in [(&result, outcome.render(format)), (&summary, to_json(&outcome.summary))] {
        std::fs::write(path, body).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    Ok(vec![result, summary])
}
