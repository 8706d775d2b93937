//! Seeded experiment runner for covariate shift and class prior estimation
//! studies.
//!
//! Exit codes: 0 on success, 1 on usage or configuration errors, 2 when the
//! sufficiency/inheritance sweep finds a disagreement (which would falsify
//! the equivalence the library is built around — it must never happen on a
//! healthy build).

mod commands;
mod config;
mod output;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use commands::EstimateArgs;
use config::RunConfig;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "covshift",
    version,
    about = "Covariate shift, sufficiency and class prior estimation experiments"
)]
struct Cli {
    /// Flat `key = value` config file; flags and --set override it.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// RNG seed.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Output directory for CSV files.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Override a config key, e.g. --set model.tau=3.0 (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Estimator response under prior probability shift -> figure1.csv
    Figure1,
    /// Pseudo prior vs true prior over discretization thresholds -> figure2.csv
    Figure2,
    /// Exhaustive sufficiency/inheritance sweep -> verdicts.csv
    TheoremCheck,
    /// Estimator comparison on simulated targets -> probing.csv
    Probing,
    /// One estimator on sample files -> CSV on stdout
    Estimate {
        /// pa | cc | acc | mean-matching | discretized | probing
        #[arg(long)]
        method: String,
        /// Target covariates, one per line.
        #[arg(long, value_name = "FILE")]
        target: PathBuf,
        /// Labeled source sample (covariate and 0/1 label per line).
        #[arg(long, value_name = "FILE")]
        source: Option<PathBuf>,
        /// Covariate threshold for cc, acc and discretized.
        #[arg(long)]
        threshold: Option<f64>,
    },
}

fn build_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        config
            .apply_file(&text)
            .with_context(|| format!("config {}", path.display()))?;
    }
    for assignment in &cli.overrides {
        let (key, value) = assignment
            .split_once('=')
            .with_context(|| format!("--set {assignment:?}: expected KEY=VALUE"))?;
        config.set(key.trim(), value.trim())?;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(out) = &cli.out {
        config.out = out.clone();
    }
    Ok(config)
}

fn run(cli: &Cli) -> Result<u8> {
    let config = build_config(cli)?;
    match &cli.command {
        Command::Figure1 => commands::cmd_figure1(&config)?,
        Command::Figure2 => commands::cmd_figure2(&config)?,
        Command::TheoremCheck => {
            if !commands::cmd_theorem_check(&config)? {
                return Ok(2);
            }
        }
        Command::Probing => commands::cmd_probing(&config)?,
        Command::Estimate {
            method,
            target,
            source,
            threshold,
        } => commands::cmd_estimate(
            &config,
            &EstimateArgs {
                method: method.clone(),
                target: target.clone(),
                source: source.clone(),
                threshold: *threshold,
            },
        )?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
