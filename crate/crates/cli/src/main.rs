//! Command-line front end for the correlated-blocking SINR engine.
//!
//! Exit codes: 0 success, 2 configuration error, 3 infeasible scenario,
//! 4 output I/O error.

mod commands;
mod config;
mod error;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::ScenarioConfig;
use corrblock::geometry::RegionModel;
use error::CliError;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "corrblock", version, about = "SINR outage analysis for a two-interferer mmWave network under correlated blocking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit analytic SINR CDF curves for fixed sites.
    Analyze(Common),
    /// Sweep the blocking correlation over angular separation.
    RhoSweep(Common),
    /// Monte-Carlo SINR distribution plus analytic comparison curves.
    Simulate(Common),
    /// Pooled curves over random interferer placements.
    RandomNetwork(Common),
}

#[derive(Args)]
struct Common {
    /// Scenario configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Master seed, overriding the config's `mc.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for CSV curves and summary.json.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker thread count (0 = automatic). Never changes results.
    #[arg(long, env = "CORRBLOCK_THREADS")]
    threads: Option<usize>,
    /// Region model for analytic quantities, overriding the config.
    #[arg(long, value_enum)]
    region_model: Option<RegionModelArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionModelArg {
    Rectangle,
    Exact,
}

fn run(command: Command) -> Result<(), CliError> {
    let common = match &command {
        Command::Analyze(c) | Command::RhoSweep(c) | Command::Simulate(c)
        | Command::RandomNetwork(c) => c,
    };
    if let Some(threads) = common.threads {
        if threads > 0 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| CliError::config(format!("--threads: {e}")))?;
        }
    }
    let (config, config_dir) = ScenarioConfig::load(&common.config)?;
    let model: RegionModel = match common.region_model {
        Some(RegionModelArg::Rectangle) => RegionModel::Rectangle,
        Some(RegionModelArg::Exact) => RegionModel::Exact,
        None => config.region_model.into(),
    };
    let out = common.out.clone();
    let seed = common.seed;
    match command {
        Command::Analyze(_) => commands::cmd_analyze(&config, &config_dir, &out, seed, model),
        Command::RhoSweep(_) => commands::cmd_rho_sweep(&config, &config_dir, &out, seed, model),
        Command::Simulate(_) => commands::cmd_simulate(&config, &config_dir, &out, seed, model),
        Command::RandomNetwork(_) => {
            commands::cmd_random_network(&config, &config_dir, &out, seed, model)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
