use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod error;
mod spectrum;

use config::RunConfig;
use error::CliError;

/// Biorthogonal analysis and dynamics of non-self-adjoint Hamiltonians.
#[derive(Parser, Debug)]
#[command(name = "nonherm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file (CSV for evolve/scan, JSON report for analyze/verify).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Residual threshold for verification checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues, regime, conditioning and metric spectra.
    Analyze,
    /// Residual table of the biorthogonal invariants.
    Verify {
        /// Also check every intertwining relation.
        #[arg(long)]
        full: bool,
    },
    /// Time evolution and transition probability on a grid, as CSV.
    Evolve,
    /// Regime and long-time behaviour over a parameter grid, as CSV.
    Scan,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let path = cli.config.ok_or_else(|| CliError::Config("--config <path> is required".into()))?;
    let cfg = RunConfig::load(&path)?;
    let threshold = match cli.tol {
        Some(t) if !(t.is_finite() && t > 0.0) => return Err(CliError::Config(format!("--tol {t} must be positive"))),
        Some(t) => t,
        None => commands::DEFAULT_THRESHOLD,
    };
    let out = cli.out.as_deref();
    match cli.command {
        Command::Analyze => commands::analyze::run(&cfg, threshold, out),
        Command::Verify { full } => commands::verify::run(&cfg, full, threshold, out),
        Command::Evolve => commands::evolve::run(&cfg, out),
        Command::Scan => commands::scan::run(&cfg, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
