use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use worldtube_cli::config::help;
use worldtube_cli::{parse_config_for, run, CliError, Command};

#[derive(Parser)]
#[command(
    name = "worldtube",
    version,
    about = "Fermi bounds, corrected spectra and detector response from a TOML config.",
    after_help = "Exit status: 0 on success, 1 on a config or domain error, 2 when a quadrature \
                  did not converge (the CSV is still written)."
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct Io {
    /// TOML config file.
    #[arg(long)]
    config: PathBuf,
    /// CSV output file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Sub {
    /// Fermi bound along a trajectory.
    #[command(after_help = help(Command::Bound))]
    Bound(Io),
    /// Lowest levels of a trapped particle, numeric against closed form.
    #[command(after_help = help(Command::Spectrum))]
    Spectrum(Io),
    /// Detector excitation and de-excitation with the relativistic noise term.
    #[command(after_help = help(Command::Respond))]
    Respond(Io),
    /// Localization, energy, trapping and hydrogen validity checks.
    #[command(after_help = help(Command::Validate))]
    Validate(Io),
    /// Cartesian product over array-valued keys of a target command.
    #[command(after_help = help(Command::Sweep))]
    Sweep(Io),
}

fn execute(command: Command, io: &Io) -> Result<bool, CliError> {
    let io_err = |path: &Path, e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    };
    let text = std::fs::read_to_string(&io.config).map_err(|e| io_err(&io.config, e))?;
    let mut config = parse_config_for(&text, command)?;
    config.output_path = Some(io.out.clone());
    config.base_dir = io.config.parent().map(Path::to_path_buf);
    let outcome = run(&config)?;
    std::fs::write(&io.out, outcome.table.to_csv()).map_err(|e| io_err(&io.out, e))?;
    Ok(outcome.converged)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (command, io) = match &cli.command {
        Sub::Bound(io) => (Command::Bound, io),
        Sub::Spectrum(io) => (Command::Spectrum, io),
        Sub::Respond(io) => (Command::Respond, io),
        Sub::Validate(io) => (Command::Validate, io),
        Sub::Sweep(io) => (Command::Sweep, io),
    };
    match execute(command, io) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!(
                "worldtube: quadrature did not converge; see the error and converged columns"
            );
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("worldtube: {e}");
            ExitCode::from(1)
        }
    }
}
