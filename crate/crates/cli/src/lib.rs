//! The `sgf` command line: argument parsing, dispatch, scan files, the
//! factorization cache and delta-set plots.

pub mod args;
pub mod cache;
pub mod commands;
pub mod error;
pub mod plot;
pub mod scan_io;

use std::ffi::OsString;

use clap::Parser;

pub use error::{CliError, CliResult};

/// Runs the CLI and returns the process exit code: 0 on success, 1 on a
/// domain error (JSON on stderr), 2 on a usage error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match commands::dispatch(cli.command) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
