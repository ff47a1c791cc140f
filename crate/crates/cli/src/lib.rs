//! Command-line front end: JSON configuration, parameter scans and CSV output.

pub mod commands;
pub mod config;
pub mod error;
pub mod presets;
pub mod table;

use std::fs;
use std::path::PathBuf;

pub use commands::Outcome;
pub use config::RunConfig;
pub use error::CliError;
pub use presets::Preset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    EosScan,
    Wall,
    Evolve,
    Regimes,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: Option<PathBuf>,
    /// Replaces `output.dir` from the configuration.
    pub out: Option<PathBuf>,
    pub preset: Option<Preset>,
}

/// Loads the configuration (or the defaults), applies the preset on top and
/// the output override last.
pub fn resolve_config(opts: &RunOptions) -> Result<RunConfig, CliError> {
    let mut cfg = match &opts.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(p) = opts.preset {
        p.apply(&mut cfg);
    }
    if let Some(dir) = &opts.out {
        cfg.output.dir = dir.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn run_config(command: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let out = &cfg.output.dir;
    fs::create_dir_all(out).map_err(CliError::io(out))?;
    match command {
        Command::EosScan => commands::cmd_eos_scan(cfg, out),
        Command::Wall => commands::cmd_wall(cfg, out),
        Command::Evolve => commands::cmd_evolve(cfg, out),
        Command::Regimes => commands::cmd_regimes(cfg, out),
    }
}

pub fn run(command: Command, opts: &RunOptions) -> Result<Outcome, CliError> {
    run_config(command, &resolve_config(opts)?)
}
