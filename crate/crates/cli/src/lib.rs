//! The `pushopt` command line: evolve optimisers, re-evaluate them, record
//! trajectories, and build cross-function and cross-dimension tables.

pub mod commands;
pub mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pushopt_core::benchmark::BenchmarkError;
use pushopt_core::evolution::ConfigError;
use thiserror::Error;

pub use config::{Flags, RunConfig, SelectionKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<BenchmarkError> for CliError {
    fn from(e: BenchmarkError) -> Self {
        match e {
            BenchmarkError::MissingShiftFile(_) | BenchmarkError::Io { .. } => CliError::Io(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "pushopt", version, about = "Evolve and analyse Push programs that act as local optimisers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evolve an optimiser on the given functions.
    Evolve {
        #[command(flatten)]
        flags: Flags,
    },
    /// Mean best error of a program over random restarts.
    Eval {
        /// Program file or `builtin:<label>` [default: the bundled optimiser for the first function].
        program: Option<String>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Record one episode as a trajectory CSV.
    Trace {
        /// Program file or `builtin:<label>` [default: the bundled optimiser for the first function].
        program: Option<String>,
        #[command(flatten)]
        flags: Flags,
    },
    /// Every program on every function.
    Generalise {
        #[command(flatten)]
        flags: Flags,
    },
    /// Every program on every function at several dimensions.
    Sweep {
        #[command(flatten)]
        flags: Flags,
    },
    /// The bundled optimisers against random search on their training functions.
    Bench {
        #[command(flatten)]
        flags: Flags,
    },
}

/// Parses `args` and runs the command, writing reports to stdout.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::dispatch(cli.command, &mut std::io::stdout().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pushopt: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
