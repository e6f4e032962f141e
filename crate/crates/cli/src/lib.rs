//! Command-line front end for `cubefactors`.
//!
//! Exit codes: 0 on success, 1 when a factorisation fails verification,
//! 2 for usage errors and refused (guarded) operations.

pub mod commands;
pub mod config;

use std::ffi::OsString;

use clap::Parser;

pub use config::Cli;
use config::Command;

pub const EXIT_USAGE: i32 = 2;

pub fn execute(cli: &Cli) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Construct(a) => commands::construct(a),
        Command::Verify(a) => commands::verify(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Rmin(a) => commands::rmin(a),
        Command::Experiment(a) => commands::experiment(a),
        Command::Export(a) => commands::export(a),
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}
