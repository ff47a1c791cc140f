use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kessence_cli::{run, Command, Preset, RunOptions};

#[derive(Parser)]
#[command(name = "kessence", version, about = "Pure-kinetic k-essence scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// JSON run configuration; defaults are used when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory, overriding the configuration.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    preset: Option<Preset>,

    /// Do not print the run summary.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Equation of state and sound speed over a range of X.
    EosScan,
    /// Wall-pair profiles and sharpness metrics.
    Wall,
    /// Integrate the homogeneous field equation.
    Evolve,
    /// Regime labels, exact against thin-wall approximations.
    Regimes,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::EosScan => Command::EosScan,
        Cmd::Wall => Command::Wall,
        Cmd::Evolve => Command::Evolve,
        Cmd::Regimes => Command::Regimes,
    };
    let opts = RunOptions {
        config: cli.config,
        out: cli.out,
        preset: cli.preset,
    };
    match run(command, &opts) {
        Ok(outcome) => {
            if !cli.quiet {
                print!("{}", outcome.summary);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("kessence: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
