use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "winsor",
    version,
    about = "Sharp mean-variance bounds on Winsorized expectations and call payoffs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum of E(X∧c) and maximum of E(X−c)⁺ over X ≥ 0, plus tail-probability bounds.
    Bounds(PointArgs),
    /// The two-point distribution attaining the minimum of E(X∧c).
    Extremal(PointArgs),
    /// Check the closed forms against the brute-force grid oracle.
    Verify(VerifyArgs),
    /// Tabulate the bounds over a uniform range of strikes.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct MomentArgs {
    /// Mean m of X.
    #[arg(long, allow_negative_numbers = true)]
    pub mean: f64,
    /// Standard deviation σ of X.
    #[arg(long = "std", allow_negative_numbers = true)]
    pub std_dev: f64,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the document here instead of stdout.
    #[arg(long = "out")]
    pub output_path: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub moments: MomentArgs,
    /// Strike c.
    #[arg(long, allow_negative_numbers = true)]
    pub strike: f64,
    /// Known P(X > c); adds the tail-probability call bounds.
    #[arg(long, allow_negative_numbers = true)]
    pub tail_prob: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub moments: MomentArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub strike: f64,
    #[arg(long, default_value_t = 200)]
    pub grid_points: usize,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Keep the plain uniform grid (plus the strike) instead of adding the
    /// minimizer's atoms; the oracle can then miss the closed form.
    #[arg(long)]
    pub no_augment: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub moments: MomentArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub strike_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub strike_max: f64,
    #[arg(long)]
    pub steps: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}
