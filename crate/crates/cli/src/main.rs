//! `ming` — experiment harness for the cyclic amplifier model.
//!
//! Exit codes: 0 success, 1 violated invariant or failed check, 2 unusable
//! flags, 3 i/o failure.

mod args;
mod commands;
mod error;
mod table;

use clap::Parser;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("ming: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
