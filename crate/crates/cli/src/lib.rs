//! Command-line front end for `spectral_chroma`.
//!
//! Reports are JSON (`"schema": 1`, reals rounded to 9 significant digits,
//! rationals as `"p/q"`), CSV with the fixed columns in
//! [`report::CSV_COLUMNS`], or aligned text.

pub mod args;
pub mod commands;
pub mod input;
pub mod report;

use std::fmt;

use args::{Cli, Command};
use spectral_chroma::Error;

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_CHAIN: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ChainViolation(_) => EXIT_CHAIN,
            Error::Parse { .. }
            | Error::ParseLine { .. }
            | Error::InvalidInput(_)
            | Error::Precondition(_)
            | Error::SizeLimit { .. } => EXIT_INPUT,
            _ => EXIT_SOLVER,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Bounds { input, run, output } => commands::cmd_bounds(&input.source(), &run, &output),
        Command::ThetaK {
            input,
            k,
            weights,
            witness,
            output,
        } => commands::cmd_theta_k(&input.source(), k, weights.as_deref(), witness, &output),
        Command::Hbracket { input, m, run, output } => {
            commands::cmd_hbracket(&input.source(), m, &run, &output)
        }
        Command::Batch { input, run, output } => commands::cmd_batch(&input.source(), &run, &output),
    }
}
