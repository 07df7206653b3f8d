mod commands;
mod output;
mod schedule;
mod sources;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use flatgap::FlatError;

#[derive(Parser, Debug)]
#[command(name = "flatgap", version, about = "Saddle connections, cylinders and direction gaps on translation surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the holonomy vectors of saddle connections up to R as CSV.
    Enumerate(EnumerateArgs),
    /// Smallest gaps and small-gap fractions over an R schedule.
    Gaps(GapsArgs),
    /// Exact measures of the level sets of the wedge count.
    Sweep(SweepArgs),
    /// Monte-Carlo estimates of p_k over random marked tori.
    Montecarlo(MonteCarloArgs),
    /// Unfold a rational billiard and report gaps between generalized diagonals.
    Billiard(BilliardArgs),
    /// Compare the sweep on a barrier surface with the marked-torus estimate.
    Compare(CompareArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SurfaceArgs {
    /// Built-in surface: square-torus, octagon or barrier.
    #[arg(long)]
    pub surface: Option<String>,
    /// Surface JSON file (polygons, gluings, optional labels).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Barrier parameter such as 1/sqrt(2); "irrational" stands for 1/sqrt(2).
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CapArgs {
    /// Developed-triangle budget; the work grows like R^3.
    #[arg(long = "cap-triangles", default_value_t = 10_000_000_000)]
    pub cap_triangles: u64,
    #[arg(long = "cap-connections", default_value_t = 50_000_000)]
    pub cap_connections: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct OutArgs {
    /// Output directory.
    #[arg(long, default_value = "flatgap-out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Radius; with a schedule the largest value is used.
    #[arg(long = "R")]
    pub r: String,
    /// Also enumerate cylinders and write them to cylinders.csv.
    #[arg(long)]
    pub cylinders: bool,
    #[command(flatten)]
    pub caps: CapArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GapsArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    /// Radius schedule: a comma list, or a..b (step a), or a..b:step.
    #[arg(long = "R")]
    pub r: String,
    /// Small-gap thresholds ε (fraction of gaps ≤ ε/R²).
    #[arg(long, default_value = "0.01,0.05,0.1,0.5,1")]
    pub eps: String,
    #[command(flatten)]
    pub caps: CapArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub surface: SurfaceArgs,
    #[arg(long = "R")]
    pub r: String,
    #[arg(long, default_value = "1")]
    pub sigma: String,
    #[arg(long, default_value_t = 0.0)]
    pub c: f64,
    /// Also render the level measures of the last (R, σ) as an SVG bar chart.
    #[arg(long)]
    pub svg: bool,
    #[command(flatten)]
    pub caps: CapArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct MonteCarloArgs {
    #[arg(long, default_value = "1")]
    pub sigma: String,
    #[arg(long, default_value_t = 0.0)]
    pub c: f64,
    #[arg(long, default_value = "0,1,2")]
    pub k: String,
    /// Number of trials; accepts forms like 1e5.
    #[arg(long, default_value = "1e5")]
    pub trials: String,
    #[arg(long)]
    pub seed: u64,
    /// Cusp truncation height of the Haar sampler.
    #[arg(long, default_value_t = flatgap::homogeneous::DEFAULT_Y_MAX)]
    pub ymax: f64,
    /// Covolume of the sampled lattices.
    #[arg(long, default_value_t = 1.0)]
    pub covolume: f64,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BilliardArgs {
    /// Built-in polygon: square, octagon-triangle or equilateral.
    #[arg(long)]
    pub polygon: Option<String>,
    /// Polygon JSON file: {"vertices": [[x, y], ...], "angles": [[p, q], ...]}.
    #[arg(long)]
    pub file: Option<PathBuf>,
    #[arg(long = "R")]
    pub r: String,
    #[arg(long, default_value = "0.01,0.05,0.1,0.5,1")]
    pub eps: String,
    #[command(flatten)]
    pub caps: CapArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CompareArgs {
    #[arg(long, default_value = "irrational")]
    pub alpha: String,
    #[arg(long = "R", default_value = "120")]
    pub r: String,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c: f64,
    #[arg(long, default_value = "0,1,2")]
    pub k: String,
    #[arg(long, default_value = "1e5")]
    pub trials: String,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = flatgap::homogeneous::DEFAULT_Y_MAX)]
    pub ymax: f64,
    /// Allowed discrepancy on top of three standard errors.
    #[arg(long, default_value_t = 0.02)]
    pub slack: f64,
    #[command(flatten)]
    pub caps: CapArgs,
    #[command(flatten)]
    pub out: OutArgs,
}

/// Exit codes by failure class.
fn exit_code(err: &anyhow::Error) -> (u8, &'static str) {
    match err.downcast_ref::<FlatError>() {
        Some(FlatError::ResourceCap { .. }) => (3, "resource_cap"),
        Some(FlatError::InvalidSurface(_)) | Some(FlatError::NotUnimodular { .. }) => (4, "invalid_surface"),
        Some(FlatError::Parse(_)) | Some(FlatError::InvalidParameter(_)) | Some(FlatError::MixedRadicands(..)) => {
            (5, "invalid_config")
        }
        Some(FlatError::Io(_)) | Some(FlatError::Json(_)) | Some(FlatError::Csv(_)) => (6, "io"),
        Some(_) => (1, "internal"),
        None if err.downcast_ref::<std::io::Error>().is_some() => (6, "io"),
        None => (5, "invalid_config"),
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("FLATGAP_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| FlatError::InvalidParameter(format!("FLATGAP_THREADS={v} is not a count")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Gaps(a) => commands::gaps(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Montecarlo(a) => commands::montecarlo(&a),
        Command::Billiard(a) => commands::billiard(&a),
        Command::Compare(a) => commands::compare(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (code, kind) = exit_code(&err);
            let record = serde_json::json!({ "error": kind, "message": format!("{err:#}"), "exit_code": code });
            eprintln!("{record}");
            ExitCode::from(code)
        }
    }
}
