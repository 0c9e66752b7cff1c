//! Experiment harness behind the `apollonian` binary.

// `!(x < y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use config::{Cli, Command, ExperimentConfig};
use error::{CliError, Result};

/// Resolves the configuration, sizes the thread pool, and runs the command.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    let name = cli.command.name();
    let config = ExperimentConfig::resolve(name, cli.command.flags())?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Config(format!("cannot start {:?} threads: {e}", config.threads)))?;
    let dir = config.output_dir.clone();
    pool.install(|| match &cli.command {
        Command::Generate(_) => commands::generate(&config, &dir),
        Command::Paircorr(_) => commands::paircorr(&config, &dir),
        Command::Nearest(_) => commands::nearest(&config, &dir),
        Command::Energy(_) => commands::energy(&config, &dir),
        Command::Count(_) => commands::count(&config, &dir),
        Command::Visible(_) => commands::visible(&config, &dir),
        Command::Sweep(_) => commands::sweep(&config, &dir),
    })
}
