//! Command-line front end: single search runs, size sweeps, parameter
//! scans, scaling fits, and graph validation, all driven by JSON config
//! files and emitting deterministic CSV.

mod commands;
mod config;
mod error;
mod output;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "qwalk", version, about = "Coined quantum-walk search simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

// QWALK_SEED is reserved for future stochastic features; the dynamics here
// are fully deterministic and the variable is never read.
#[derive(Subcommand)]
enum Command {
    /// Run one search and write t,p_marked plus a peaks CSV.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write a gnuplot script next to the output.
        #[arg(long)]
        gnuplot: bool,
    },
    /// Run a size sweep and write one n,edges,peak_prob,peak_time row per instance.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Number of worker threads; output is identical at any setting.
        #[arg(long, default_value_t = default_parallelism())]
        parallel: usize,
        #[arg(long)]
        gnuplot: bool,
    },
    /// Scan the marked coin's delta or phi and write one p_marked column per value.
    Scan {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = default_parallelism())]
        parallel: usize,
        #[arg(long)]
        gnuplot: bool,
    },
    /// Fit a scaling model to a sweep CSV and write a JSON report.
    Fit {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a graph spec and print any invariant violations, one per line.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

fn default_parallelism() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, out, gnuplot } => commands::cmd_run(config, out, *gnuplot),
        Command::Sweep { config, out, parallel, gnuplot } => {
            commands::cmd_sweep(config, out, (*parallel).max(1), *gnuplot)
        }
        Command::Scan { config, out, parallel, gnuplot } => {
            commands::cmd_scan(config, out, (*parallel).max(1), *gnuplot)
        }
        Command::Fit { config, out } => commands::cmd_fit(config, out),
        Command::Validate { config } => commands::cmd_validate(config),
    };
    if let Err(err) = result {
        eprintln!("qwalk: {err}");
        std::process::exit(err.exit_code());
    }
}
