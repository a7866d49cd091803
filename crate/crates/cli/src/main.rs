//! `olg-land`: simulate, diagnose and sweep OLG land economies.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::Figure;
use error::{CliError, EXIT_OK, EXIT_USAGE};

/// Output directory used when `-o` is not given.
const OUT_ENV: &str = "OLG_LAND_OUT";

#[derive(Debug, Parser)]
#[command(
    name = "olg-land",
    version,
    about = "Equilibria, bubbles and efficiency in OLG economies with land"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the equilibrium path and write it as CSV.
    Simulate {
        config: PathBuf,
        #[arg(short, long, env = OUT_ENV)]
        out: PathBuf,
    },
    /// Write the bubble, efficiency and welfare report.
    Diagnose {
        config: PathBuf,
        #[arg(short, long, env = OUT_ENV)]
        out: PathBuf,
    },
    /// Write the panel series of a built-in figure.
    Reproduce {
        #[arg(value_enum)]
        figure: Figure,
        #[arg(short, long, env = OUT_ENV)]
        out: PathBuf,
    },
    /// Diagnose every point of the config's [sweep] grid.
    Sweep {
        config: PathBuf,
        #[arg(short, long, env = OUT_ENV)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<Vec<PathBuf>, CliError> {
    match cli.command {
        Command::Simulate { config, out } => commands::simulate(&config, &out),
        Command::Diagnose { config, out } => commands::diagnose_cmd(&config, &out),
        Command::Reproduce { figure, out } => commands::reproduce(figure, &out),
        Command::Sweep { config, out } => commands::sweep(&config, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK),
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(cli) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
