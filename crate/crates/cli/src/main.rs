mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "netoutage",
    version,
    about = "Outage, diversity and capacity analysis of source-terminal networks"
)]
pub struct Cli {
    /// Network file (JSON or DOT).
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,

    /// Input format; inferred from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<InputFormat>,

    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,

    /// Maximum number of terms an exponential enumeration may visit.
    #[arg(long, global = true, default_value_t = netoutage::Budget::DEFAULT_TERMS)]
    pub budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum InputFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
pub enum Command {
    /// Full report: families, enumerator, diversity, O(p), bounds, capacity.
    Analyze,
    /// List the source-terminal paths.
    Paths,
    /// List the cut-set families K, L and M.
    Cuts,
    /// Capacity polynomials and ergodic capacity.
    Capacity,
    /// Evaluate curves on a uniform p grid and print CSV.
    Sweep(SweepArgs),
    /// Monte Carlo estimate of outage and ergodic capacity.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Curve {
    Outage,
    Bounds,
    Capacity,
    Ergodic,
    Correlated,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "0")]
    pub p_start: String,
    #[arg(long, default_value = "1")]
    pub p_end: String,
    /// Grid points, endpoints included.
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "outage")]
    pub curves: Vec<Curve>,
    /// Correlation coefficients for the correlated curve (comma-separated).
    #[arg(long, value_delimiter = ',')]
    pub rho: Vec<String>,
    /// Partition file for the correlated curve.
    #[arg(long)]
    pub partition: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("links").required(true).args(["p", "probs", "snr"])))]
pub struct SimulateArgs {
    /// Common link outage probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// JSON array of per-link outage probabilities.
    #[arg(long)]
    pub probs: Option<PathBuf>,
    /// JSON array of per-link mean SNR values (Rayleigh links).
    #[arg(long)]
    pub snr: Option<PathBuf>,
    /// Correlation coefficient; overrides the partition file's value.
    #[arg(long, requires = "partition")]
    pub rho: Option<String>,
    /// Partition file; switches to the block-correlated model (needs --p).
    #[arg(long, requires = "p")]
    pub partition: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Independent generator streams, run in parallel.
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// Also compute the exact values and the z-scores of the estimates.
    #[arg(long)]
    pub check: bool,
    /// Print a CSV header and row instead of JSON.
    #[arg(long)]
    pub csv: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| commands::run(&cli));
    match outcome {
        Ok(Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
        Err(_) => ExitCode::from(commands::EXIT_INTERNAL),
    }
}
