//! Command-line experiment runner. Every subcommand writes a CSV table
//! preceded by `#` lines holding the tool version and the resolved settings.

mod commands;
mod config;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

use clap::{Parser, Subcommand};

pub use commands::{
    cmd_entropy_sweep, cmd_fpi_fidelity, cmd_pt_dist, cmd_sample, cmd_synth_check, cmd_worst_case, parse_sequence,
    Verdict, T_SYNTHESIS_TOLERANCE, WORST_CASE_TOLERANCE,
};
pub use config::{Overrides, RunConfig, Xi};

use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_ACCEPTANCE: i32 = 4;
pub const EXIT_IO: i32 = 5;

type CommandFn = fn(&RunConfig, &mut dyn Write) -> Result<Verdict>;

#[derive(Debug, Parser)]
#[command(name = "ensemble-rcs", version, about = "Random circuit experiments on qubit ensembles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Output entropy against circuit depth.
    EntropySweep(Overrides),
    /// Sorted output distribution against Porter-Thomas.
    PtDist(Overrides),
    /// Path-integral fidelity against circuit depth.
    FpiFidelity(Overrides),
    /// Worst-case circuit probability against the gap-function oracle.
    WorstCase(Overrides),
    /// Measurement shots of a random circuit.
    Sample(Overrides),
    /// Checks of the T and R gate syntheses.
    SynthCheck(Overrides),
}

impl Command {
    fn parts(&self) -> (&Overrides, CommandFn) {
        match self {
            Command::EntropySweep(o) => (o, cmd_entropy_sweep),
            Command::PtDist(o) => (o, cmd_pt_dist),
            Command::FpiFidelity(o) => (o, cmd_fpi_fidelity),
            Command::WorstCase(o) => (o, cmd_worst_case),
            Command::Sample(o) => (o, cmd_sample),
            Command::SynthCheck(o) => (o, cmd_synth_check),
        }
    }
}

/// Process exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CapExceeded { .. } | Error::PathCapExceeded { .. } => EXIT_CAP,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

/// Runs a parsed command and returns the verdict of its built-in check.
pub fn run(cli: &Cli) -> Result<Verdict> {
    let (overrides, command) = cli.command.parts();
    let config = RunConfig::resolve(overrides)?;
    let execute = || -> Result<Verdict> {
        match &config.out {
            Some(path) => {
                let mut out = BufWriter::new(File::create(path)?);
                let verdict = command(&config, &mut out)?;
                out.flush()?;
                Ok(verdict)
            }
            None => {
                let stdout = std::io::stdout();
                let mut out = stdout.lock();
                command(&config, &mut out)
            }
        }
    };
    match config.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Domain(e.to_string()))?
            .install(execute),
        None => execute(),
    }
}

/// Parses arguments, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(Verdict::Pass) => EXIT_OK,
        Ok(Verdict::Fail) => {
            eprintln!("error: acceptance check failed");
            EXIT_ACCEPTANCE
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
