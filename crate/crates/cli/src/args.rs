use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hypstable", version, about = "Laws of the hypergeometric-stable Lévy process")]
pub struct Cli {
    /// key=value file with default option values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a density, law or exponent on a grid.
    Eval(EvalArgs),
    /// Monte-Carlo samples of the overshoot or the all-time infimum.
    Simulate(SimulateArgs),
    /// Run a verification suite and emit a report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProcessArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub dim: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalTarget {
    LevyDensity,
    Exponent,
    Overshoot,
    Undershoot,
    Infimum,
    Hitting,
    Potential,
    Renewal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawKind {
    Density,
    Cdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    /// Potential density `u(x, y)` of the radial process.
    Radial,
    /// Potential density `r(x, u)` of `ξ` killed below 0.
    Killed,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub target: EvalTarget,
    #[command(flatten)]
    pub process: ProcessArgs,
    /// Passage level (`u > 0` for the overshoot, `v < 0` for the undershoot).
    #[arg(long, allow_negative_numbers = true)]
    pub level: Option<f64>,
    /// Comma-separated radii for multi-point hitting.
    #[arg(long, value_delimiter = ',')]
    pub points: Option<Vec<f64>>,
    /// Abscissae as lo:hi:n.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Starting radius (hitting, potential) or starting level (killed potential).
    #[arg(long)]
    pub start: Option<f64>,
    /// Constant of the killed potential kernel.
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long, value_enum)]
    pub kind: Option<LawKind>,
    #[arg(long, value_enum)]
    pub kernel: Option<KernelKind>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimMode {
    Overshoot,
    Infimum,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub process: ProcessArgs,
    #[arg(long)]
    pub paths: Option<usize>,
    /// Lamperti-clock step.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Horizon on the Lamperti clock.
    #[arg(long)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub mode: Option<SimMode>,
    #[arg(long)]
    pub level: Option<f64>,
    #[arg(long)]
    pub start: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    WienerHopf,
    Vigon,
    ExitLaws,
    Montecarlo,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub process: ProcessArgs,
    /// Reduced grids and sample sizes.
    #[arg(long)]
    pub quick: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub paths: Option<usize>,
    #[arg(long)]
    pub dt: Option<f64>,
    /// Also write the λ, Ψ table of the Wiener–Hopf suite to this CSV file.
    #[arg(long)]
    pub table: Option<PathBuf>,
}
