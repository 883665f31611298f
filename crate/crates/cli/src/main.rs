//! Command line front end: metrics reports, lattice decompositions,
//! distribution generators, batch experiments and the bootstrap pipeline.
//!
//! Exit codes: 0 success, 2 malformed input, 3 resource-cap violation,
//! 4 internal invariant violation.

mod cmd_bootstrap;
mod cmd_experiment;
mod cmd_generate;
mod cmd_lattice;
mod cmd_metrics;
mod io_util;

use std::panic;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use oinfo::unit::LogUnit;

#[derive(Debug)]
pub enum CliError {
    /// Malformed or missing input (exit 2).
    Input(String),
    /// A resource cap was exceeded (exit 3).
    Cap(String),
    /// A numerical identity failed at run time (exit 4).
    Invariant(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Cap(m) | CliError::Invariant(m) => m,
        }
    }
}

impl From<oinfo::Error> for CliError {
    fn from(e: oinfo::Error) -> Self {
        if e.is_cap_violation() {
            CliError::Cap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "oinfo",
    version,
    about = "Exact information measures of high-order interdependence for discrete systems"
)]
struct Cli {
    /// Output unit: bit, nat, mut or base:N
    #[arg(long, global = true, default_value = "bit")]
    unit: String,

    /// Seed for every randomized operation (echoed in provenance)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Primary output format where a command supports both
    #[arg(long, global = true, value_parser = ["json", "csv"])]
    format: Option<String>,

    /// Write the primary output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full metric report for a distribution or an empirical series
    Metrics(cmd_metrics::MetricsArgs),
    /// Partition-lattice decompositions of C, B and the O-information
    Lattice(cmd_lattice::LatticeArgs),
    /// Write a named distribution as canonical JSON
    Generate(cmd_generate::GenerateArgs),
    /// Batch experiments emitting plot-ready CSV
    Experiment(cmd_experiment::ExperimentArgs),
    /// Pairwise report with circular block-bootstrap standard errors
    Bootstrap(cmd_bootstrap::BootstrapArgs),
}

/// Shared run context resolved from the global flags.
pub struct Ctx {
    pub unit: LogUnit,
    pub seed: u64,
    pub format: Option<String>,
    pub out: Option<String>,
}

fn init_thread_pool() {
    if let Ok(value) = std::env::var("HOI_MAX_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn run() -> CliResult<()> {
    let cli = Cli::parse();
    init_thread_pool();
    let unit = LogUnit::parse(&cli.unit).map_err(|e| CliError::Input(e.to_string()))?;
    let ctx = Ctx {
        unit,
        seed: cli.seed,
        format: cli.format,
        out: cli.out,
    };
    match cli.command {
        Command::Metrics(args) => cmd_metrics::run(&ctx, args),
        Command::Lattice(args) => cmd_lattice::run(&ctx, args),
        Command::Generate(args) => cmd_generate::run(&ctx, args),
        Command::Experiment(args) => cmd_experiment::run(&ctx, args),
        Command::Bootstrap(args) => cmd_bootstrap::run(&ctx, args),
    }
}

fn main() -> ExitCode {
    match panic::catch_unwind(run) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
        Err(_) => {
            eprintln!("error: internal invariant violation (see panic message above)");
            ExitCode::from(4)
        }
    }
}
