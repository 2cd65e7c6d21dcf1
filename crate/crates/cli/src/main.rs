// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;
mod manifest;

/// Exit code for a run that completed but missed a threshold.
const EXIT_THRESHOLD: u8 = 2;

#[derive(Parser)]
#[command(name = "corrwish", version, about = "Extreme eigenvalues of correlated Wishart matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo experiment and write samples, summary, histograms and a manifest.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides `out_dir` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; results do not depend on this.
        #[arg(long)]
        threads: Option<usize>,
        /// Overrides `seed` in the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Exit with code 2 if any edge misses `--ks-max` or a fit hits its bounds.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 0.03)]
        ks_max: f64,
    },
    /// Tabulate the Tracy-Widom CDFs and densities on a 0.01 grid.
    TwTable {
        /// Comma-separated subset of 1, 2, 4.
        #[arg(long, value_delimiter = ',', default_values_t = [1u8, 2, 4])]
        beta: Vec<u8>,
        #[arg(long, default_value_t = -8.0, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, default_value_t = 6.0, allow_hyphen_values = true)]
        to: f64,
        /// One of sqrt2, unscaled, soft_edge.
        #[arg(long)]
        gse_convention: Option<String>,
        /// CSV file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact β = 2 gap probabilities on a threshold grid.
    Oracle {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed for a sampled spectrum; overrides the query.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check how fast the spectrum approaches a multiple of the identity.
    Condition {
        #[arg(long)]
        config: PathBuf,
        /// Sample size; overrides `n` in the config.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Simulate { config, out, threads, seed, check, ks_max } => {
            commands::simulate(&config, out, threads, seed, check.then_some(ks_max))
        }
        Command::TwTable { beta, from, to, gse_convention, out } => {
            commands::tw_table(&beta, from, to, gse_convention.as_deref(), out.as_deref())
        }
        Command::Oracle { config, out, seed } => commands::oracle(&config, out.as_deref(), seed),
        Command::Condition { config, n, seed } => commands::condition(&config, n, seed),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_THRESHOLD),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
