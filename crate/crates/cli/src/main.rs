//! `geomplex` command-line front end.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "geomplex", version, about = "Filtered complexes, persistence diagrams and stability checks")]
pub struct Cli {
    /// Emit JSON (with a top-level `"schema": 1`) instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a named example space.
    Gen(GenArgs),
    /// Persistence diagram of a filtration built from an input file.
    Ph(PhArgs),
    /// Distance between two diagrams or two spaces.
    Dist(DistArgs),
    /// Run a theorem check; exit status 1 if it fails.
    Verify(VerifyArgs),
    /// Betti numbers of a complex at one scale.
    Betti(BettiArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// parallel-segments, two-rectangles, open-rips, witness-example, circle, tree
    pub name: String,
    #[arg(long, alias = "N")]
    pub n: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub circumference: Option<f64>,
    /// Tree spec: `star:K[:LEN]`, `binary:DEPTH[:LEN]`, `path:LEN` or `u-v:len,...`.
    #[arg(long)]
    pub tree: Option<String>,
    /// Subdivision step for trees.
    #[arg(long)]
    pub h: Option<f64>,
    /// Output file (a directory for witness-example); stdout if omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ComplexKind {
    Rips,
    RipsOpen,
    Cech,
    AmbientCech,
    Dowker,
    Witness,
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Matrix (`dist n`), cross matrix (`dowker m n`) or CSV point cloud.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Witness point cloud, for the cross-dissimilarity kinds.
    #[arg(long)]
    pub witnesses: Option<PathBuf>,
    /// Metric for CSV input: euclidean, l1, linf or circle:C.
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
    #[arg(long, value_enum, default_value = "rips")]
    pub kind: ComplexKind,
    /// Highest homology dimension reported.
    #[arg(long, default_value_t = 1)]
    pub max_dim: usize,
    /// Prime characteristic of the coefficient field.
    #[arg(long, default_value_t = 2)]
    pub field: u64,
}

#[derive(Args, Debug)]
pub struct PhArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Report H₀ births at −∞.
    #[arg(long)]
    pub h0_neg_inf: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BettiArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Scale.
    #[arg(long, short, allow_hyphen_values = true)]
    pub a: f64,
    /// Strict inequality (`< a`).
    #[arg(long)]
    pub strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DistKind {
    Bottleneck,
    Hausdorff,
    GhExact,
    GhUpper,
}

#[derive(Args, Debug)]
pub struct DistArgs {
    #[arg(value_enum)]
    pub kind: DistKind,
    pub a: PathBuf,
    pub b: PathBuf,
    /// Homology dimension for bottleneck; all dimensions if omitted.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Include the optimal matching (bottleneck).
    #[arg(long)]
    pub certificate: bool,
    /// Correspondence file (`i j` lines) for gh-upper; full relation if omitted.
    #[arg(long)]
    pub correspondence: Option<PathBuf>,
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Dowker,
    RipsStability,
    CechStability,
    AmbientCechStability,
    WitnessStability,
    WitnessCounterexample,
    Pathology,
    PathMetric,
    Hyperbolic,
    Interleaving,
    Bottleneck,
    Densify,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub theorem: Theorem,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub field: u64,
    /// Highest homology dimension checked.
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Circle sample size, or ambient space size for ambient-cech-stability.
    #[arg(long, alias = "N")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Pathology example: parallel-segments, two-rectangles, open-rips, parallel-segments-cech.
    #[arg(long, default_value = "parallel-segments")]
    pub example: String,
    /// Comma-separated discretization sizes.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// Scale for the pathology sweep.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, default_value = "star:3")]
    pub tree: String,
    #[arg(long, default_value_t = 0.25)]
    pub h: f64,
    /// Witness counts for the densify experiment.
    #[arg(long, value_delimiter = ',')]
    pub counts: Vec<usize>,
    /// First space (stability and interleaving checks on given inputs).
    #[arg(long)]
    pub x: Option<PathBuf>,
    /// Second space.
    #[arg(long)]
    pub y: Option<PathBuf>,
    /// Correspondence file for interleaving on given inputs.
    #[arg(long)]
    pub correspondence: Option<PathBuf>,
    /// Interleaving parameter; the correspondence's distortion if omitted.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value = "euclidean")]
    pub metric: String,
    /// Print every report, not just failures.
    #[arg(long, short)]
    pub verbose: bool,
}

fn configure_threads() -> Result<(), String> {
    if let Ok(v) = std::env::var("GEOMPLEX_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| format!("GEOMPLEX_THREADS must be a positive integer, got `{v}`"))?;
        if n == 0 {
            return Err("GEOMPLEX_THREADS must be positive".into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
