//! `lefvol`: compute Lefschetz volumes, run verification suites and fit
//! valuation coefficients.
//!
//! Exit codes: 0 success, 1 verification failures, 2 usage or parse error,
//! 3 invalid map, 4 degenerate embedding, 5 rank-deficient observations.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lefvol", version, about = "Lefschetz volumes of simplicial self-maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lefschetz volumes of a complex file by both the direct sum and the
    /// trace formula.
    Compute(ComputeArgs),
    /// Run one verification suite, or all of them.
    Verify(VerifyArgs),
    /// Recover coefficients a_k of a valuation from observed values.
    Decompose(DecomposeArgs),
}

#[derive(Debug, clap::Args)]
struct ComputeArgs {
    /// Complex file (JSON).
    #[arg(long)]
    complex: PathBuf,
    /// Map file, or inline pairs like `a:b,b:a`; unlisted vertices are fixed.
    /// Overrides the map in the complex file.
    #[arg(long, conflicts_with = "identity")]
    map: Option<String>,
    /// Use the identity map even if the complex file has one.
    #[arg(long)]
    identity: bool,
    /// `all` or a single index k.
    #[arg(long, default_value = "all")]
    k: String,
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: u64,
    #[arg(long, env = "LEFVOL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Also list c(f, x) for every simplex.
    #[arg(long)]
    coefficients: bool,
    /// Evaluate Σ a_k v_k for comma-separated coefficients a_0,a_1,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    valuation: Option<Vec<f64>>,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, env = "LEFVOL_SEED", default_value_t = 0)]
    seed: u64,
    /// Random cases per algebraic suite.
    #[arg(long, default_value_t = 200)]
    budget: usize,
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Include wall time in reports (makes output run-dependent).
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, clap::Args)]
struct DecomposeArgs {
    /// Observations file (JSON); paths inside are relative to it.
    #[arg(long)]
    observations: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    mc_samples: u64,
    #[arg(long, env = "LEFVOL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => commands::compute(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Decompose(args) => commands::decompose(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
