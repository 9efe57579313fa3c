use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use critqfi::uncertainty::{DerivativeRoute, StatePath};
use serde::{Deserialize, Serialize};

const AFTER_HELP: &str = "\
Ranges:
  start:stop:count  evenly spaced, endpoints included
  start:stop        evenly spaced with the command's default count
  a,b,c             explicit list
  For --n, start:stop lists every valid size (even sizes for tfim).

Units:
  --omega sets the energy unit. Couplings and spreads are given and
  written as g/omega and sigma/omega; QFI columns are QFI*omega^2.

Config file:
  --config FILE reads `key = value` lines (long flag names, `#` comments).
  Flags on the command line take precedence.

Exit status:
  0 success, 1 I/O error, 2 some cells failed (partial output written),
  64 usage error.";

#[derive(Debug, Parser)]
#[command(
    name = "critqfi",
    version,
    about = "Quantum Fisher information of critical probes under Gaussian uncertainty in the coupling",
    after_help = AFTER_HELP,
    args_override_self = true
)]
pub struct Cli {
    /// `key = value` file with defaults for the subcommand's flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// 2x2 QFIM in (omega, g) at one point, with determinant and Cramer-Rao bounds.
    Qfim(QfimArgs),
    /// Averaged QFI over a coupling range for a list of spreads.
    Sweep(SweepArgs),
    /// Averaged QFI on a (coupling, spread) grid.
    PhaseDiagram(PhaseDiagramArgs),
    /// Peak averaged QFI over the coupling for each size and spread.
    PeakScaling(PeakScalingArgs),
    /// Largest spread at which the peak stays within epsilon of the ideal peak.
    SigmaF(SigmaFArgs),
    /// Power-law fit y = a x^b of two columns of a CSV file.
    Fit(FitArgs),
    /// Repeat a run from its JSON sidecar.
    Rerun(RerunArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Qfim(_) => "qfim",
            Command::Sweep(_) => "sweep",
            Command::PhaseDiagram(_) => "phase-diagram",
            Command::PeakScaling(_) => "peak-scaling",
            Command::SigmaF(_) => "sigma-f",
            Command::Fit(_) => "fit",
            Command::Rerun(_) => "rerun",
        }
    }

    pub fn output(&self) -> Option<&OutputArgs> {
        match self {
            Command::Qfim(a) => Some(&a.output),
            Command::Sweep(a) => Some(&a.output),
            Command::PhaseDiagram(a) => Some(&a.output),
            Command::PeakScaling(a) => Some(&a.output),
            Command::SigmaF(a) => Some(&a.output),
            Command::Fit(a) => Some(&a.output),
            Command::Rerun(_) => None,
        }
    }

    pub fn output_mut(&mut self) -> Option<&mut OutputArgs> {
        match self {
            Command::Qfim(a) => Some(&mut a.output),
            Command::Sweep(a) => Some(&mut a.output),
            Command::PhaseDiagram(a) => Some(&mut a.output),
            Command::PeakScaling(a) => Some(&mut a.output),
            Command::SigmaF(a) => Some(&mut a.output),
            Command::Fit(a) => Some(&mut a.output),
            Command::Rerun(_) => None,
        }
    }

    pub const NAMES: [&'static str; 7] =
        ["qfim", "sweep", "phase-diagram", "peak-scaling", "sigma-f", "fit", "rerun"];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Two-level Landau-Zener probe.
    Lz,
    /// Transverse-field Ising chain (even N).
    Tfim,
    /// Lipkin-Meshkov-Glick model at finite N.
    Lmg,
    /// LMG thermodynamic limit, normal phase (qfim only).
    LmgThermo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Auto,
    WeightScore,
    SampledProjector,
}

impl From<Route> for DerivativeRoute {
    fn from(r: Route) -> Self {
        match r {
            Route::Auto => DerivativeRoute::Auto,
            Route::WeightScore => DerivativeRoute::WeightScore,
            Route::SampledProjector => DerivativeRoute::SampledProjector,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathChoice {
    Auto,
    Dense,
    LowRank,
}

impl From<PathChoice> for StatePath {
    fn from(p: PathChoice) -> Self {
        match p {
            PathChoice::Auto => StatePath::Auto,
            PathChoice::Dense => StatePath::Dense,
            PathChoice::LowRank => StatePath::LowRank,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct OutputArgs {
    /// Directory for the CSV and JSON files.
    #[arg(long, env = "CRITQFI_OUT_DIR", default_value = ".")]
    pub out_dir: PathBuf,
    /// File stem; defaults to the command name.
    #[arg(long)]
    pub name: Option<String>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct EvalArgs {
    /// Gauss-Hermite order M.
    #[arg(long, default_value_t = 64)]
    pub nodes: usize,
    /// Discretisation of the omega-derivative of the averaged state.
    #[arg(long, value_enum, default_value_t = Route::Auto)]
    pub route: Route,
    /// Dense or low-rank representation of the averaged state.
    #[arg(long, value_enum, default_value_t = PathChoice::Auto)]
    pub path: PathChoice,
    /// Re-evaluate with 2M nodes and flag cells that move by more than 1e-6.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    pub check_convergence: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct QfimArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Coupling g (absolute, same unit as omega).
    #[arg(long)]
    pub g: f64,
    /// Number of spins (tfim, lmg).
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// g/omega range (default count 101).
    #[arg(long, default_value = "0.01:2:200")]
    pub g: String,
    /// sigma/omega values.
    #[arg(long, default_value = "0,0.05,0.1,0.25,0.5,1")]
    pub sigma: String,
    #[command(flatten)]
    pub eval: EvalArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct PhaseDiagramArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// g/omega range (default count 101).
    #[arg(long, default_value = "0.5:1.5:101")]
    pub g: String,
    /// sigma/omega range (default count 101).
    #[arg(long, default_value = "0:1:51")]
    pub sigma: String,
    #[command(flatten)]
    pub eval: EvalArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SearchArgs {
    /// Lower end of the g/omega search range.
    #[arg(long, default_value_t = 0.01)]
    pub g_min: f64,
    /// Upper end of the g/omega search range.
    #[arg(long, default_value_t = 2.0)]
    pub g_max: f64,
    /// Coarse grid points before golden-section refinement.
    #[arg(long, default_value_t = 201)]
    pub coarse_points: usize,
    /// Final g/omega bracket width.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct PeakScalingArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Sizes: list or range.
    #[arg(long, default_value = "8:64")]
    pub n: String,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// sigma/omega values.
    #[arg(long, default_value = "0")]
    pub sigma_list: String,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub eval: EvalArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SigmaFArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Sizes: list or range.
    #[arg(long, default_value = "8:64")]
    pub n: String,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Tolerated relative deviation of the peak.
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 1e-4)]
    pub sigma_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma_max: f64,
    /// Log-grid intervals per decade of sigma.
    #[arg(long, default_value_t = 48)]
    pub per_decade: usize,
    /// Half-width in g/omega of the window around the ideal peak.
    #[arg(long, default_value_t = 0.3)]
    pub window: f64,
    #[arg(long, default_value_t = 31)]
    pub window_points: usize,
    /// Grid stride of the first pass over sigma.
    #[arg(long, default_value_t = 8)]
    pub stride: usize,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub eval: EvalArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct FitArgs {
    /// CSV produced by peak-scaling or sigma-f (or any CSV with --x and --y).
    #[arg(long)]
    pub input: PathBuf,
    /// Abscissa column; defaults to `n`.
    #[arg(long)]
    pub x: Option<String>,
    /// Ordinate column; detected from the header when omitted.
    #[arg(long)]
    pub y: Option<String>,
    /// Keep only rows with `column=value`, e.g. `sigma_over_omega=0`.
    #[arg(long = "where")]
    pub filter: Option<String>,
    #[arg(long)]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct RerunArgs {
    /// JSON sidecar written by an earlier run.
    pub sidecar: PathBuf,
    /// Override the recorded output directory.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Override the recorded worker count.
    #[arg(long)]
    pub workers: Option<usize>,
}
