//! Command-line front end for `tbdecay`.

pub mod commands;
pub mod config;
pub mod error;
pub mod figure;
pub mod output;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use commands::Outputs;
use config::{Format, Settings};
use error::{CliError, CliResult};
use figure::FigureKind;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "tbdecay",
    version,
    about = "Edge-state decay in a semi-infinite lattice"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact c₁(t) from the Brillouin-zone integral
    Exact(Settings),
    /// RK4 integration of the lattice equations
    Evolve(Settings),
    /// Zeno crossing, anti-Zeno peak and measured decay
    Zeno(Settings),
    /// Beam propagation in a waveguide array
    Bpm(Settings),
    /// Channel mode and extracted hopping ratio
    Modes(Settings),
    /// Plot-ready data for one figure
    Figure {
        #[arg(value_enum)]
        kind: FigureKind,
        #[command(flatten)]
        settings: Settings,
    },
}

impl Command {
    fn settings(&self) -> &Settings {
        match self {
            Command::Exact(s)
            | Command::Evolve(s)
            | Command::Zeno(s)
            | Command::Bpm(s)
            | Command::Modes(s) => s,
            Command::Figure { settings, .. } => settings,
        }
    }
}

/// Computes the artifacts of one command with resolved settings.
pub fn execute(command: &Command, s: &Settings) -> CliResult<Outputs> {
    match command {
        Command::Exact(_) => commands::exact(s),
        Command::Evolve(_) => commands::evolve(s),
        Command::Zeno(_) => commands::zeno(s),
        Command::Bpm(_) => commands::bpm(s),
        Command::Modes(_) => commands::modes(s),
        Command::Figure { kind, .. } => figure::figure(*kind, s),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// `out.csv` + `intensity` → `out_intensity.csv`.
fn sibling(path: &Path, name: &str, format: Format) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}_{name}.{}", format.extension()))
}

fn emit(command: &Command, outputs: &Outputs, s: &Settings) -> CliResult<()> {
    let format = s.format();
    if let Command::Figure { .. } = command {
        let dir = s.out.clone().unwrap_or_else(|| PathBuf::from("."));
        std::fs::create_dir_all(&dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        for (name, art) in outputs {
            let path = dir.join(format!("{name}.{}", format.extension()));
            write_file(&path, &art.to_bytes(format)?)?;
        }
        return Ok(());
    }
    let Some((_, primary)) = outputs.first() else {
        return Ok(());
    };
    match &s.out {
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(&primary.to_bytes(format)?)?;
            lock.flush()?;
        }
        Some(path) => {
            write_file(path, &primary.to_bytes(format)?)?;
            for (name, art) in &outputs[1..] {
                write_file(&sibling(path, name, format), &art.to_bytes(format)?)?;
            }
        }
    }
    Ok(())
}

pub fn run(cli: Cli) -> CliResult<()> {
    let settings = cli.command.settings().clone().resolve()?;
    let outputs = execute(&cli.command, &settings)?;
    emit(&cli.command, &outputs, &settings)
}

/// Parses, runs and reports; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            let err = CliError::Usage(first.to_string());
            eprintln!("{}", err.to_json());
            return err.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
