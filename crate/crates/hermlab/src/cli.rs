use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "hermlab",
    version,
    about = "Invariant Hermitian structures on products of odd spheres"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the invariant suites over a grid of (n, p).
    Verify(VerifyArgs),
    /// Ricci tensor, scalar curvature, eigenvalues and Einstein constant of g(a,c).
    Report(ReportArgs),
    /// Locate and classify the critical point of s(a,c).
    Optimize(OptimizeArgs),
    /// Sectional-curvature extremes of the critical metric.
    Sectional(SectionalArgs),
    /// Tabulate s(a,c) over a rectangle.
    Scan(ScanArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Random seed; the HERMLAB_SEED environment variable takes precedence.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub output: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Space {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Single first rank; combine with --p.
    #[arg(long, requires = "p", conflicts_with_all = ["n_max", "p_max"])]
    pub n: Option<usize>,
    #[arg(long, requires = "n")]
    pub p: Option<usize>,
    /// Grid bound: every 0 ≤ n ≤ n_max, 0 ≤ p ≤ p_max except (0, 0).
    #[arg(long, conflicts_with = "p")]
    pub n_max: Option<usize>,
    #[arg(long)]
    pub p_max: Option<usize>,
    /// Random 2-planes per sectional check.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub space: Space,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    /// Entrywise tolerance of the Einstein test.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub space: Space,
    /// Gradient-norm stopping tolerance of the ascent.
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    /// Report the closed-form point instead of running the ascent.
    #[arg(long)]
    pub closed_form: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SectionalArgs {
    #[command(flatten)]
    pub space: Space,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Slack allowed when counting samples inside the bounds.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub space: Space,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    pub a_min: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub a_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub c_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub c_max: f64,
    /// Grid points per axis.
    #[arg(long, default_value_t = 41)]
    pub steps: usize,
    #[command(flatten)]
    pub common: Common,
}
