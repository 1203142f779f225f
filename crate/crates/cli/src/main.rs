//! `rdmt`: sampling, density evaluation, spectra and the verification suite
//! from the command line.
//!
//! Exit codes: 0 on success, 1 on a runtime failure or a failed suite, 2 on
//! a configuration or input error. The first line on stderr is always a
//! JSON run record (version, seed, resolved parameters).

mod commands;
mod dist;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{DensityArgs, SampleArgs, SpectrumArgs, VerifyArgs};

#[derive(Parser, Debug)]
#[command(name = "rdmt", version, about = "Matricvariate T and beta type II distributions over R, C, H and O")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Draw samples as JSON Lines, one matrix per line.
    Sample(SampleArgs),
    /// Evaluate log densities at the matrices of a JSON Lines file.
    Density(DensityArgs),
    /// Draw samples and write their spectra as CSV, optionally with a grid
    /// of the closed-form joint density.
    Spectrum(SpectrumArgs),
    /// Run the default or a user-supplied verification suite.
    Verify(VerifyArgs),
}

/// A problem with the invocation or its input files.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(ConfigError(msg.into()).into())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ConfigError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<rdmt::Error>() {
        Some(core) if core.is_config() => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sample(a) => commands::sample(a),
        Command::Density(a) => commands::density(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
