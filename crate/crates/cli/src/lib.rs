//! Command-line front end for `bpint`.

pub mod args;
pub mod commands;
pub mod error;
pub mod eval;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use error::{CliError, CliResult};
pub use sweep::{run_sweep, SweepConfig};

use args::{Cli, Command};

/// Cap the worker pool from `BPINT_THREADS`; ignored if unset or unparsable.
fn init_threads() {
    if let Some(n) = std::env::var("BPINT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialisation (tests calling run repeatedly) is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

pub fn dispatch(command: &Command) -> CliResult<String> {
    match command {
        Command::Check(a) => commands::check(a),
        Command::Eval(a) => commands::eval(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Dos(a) => commands::dos(a),
        Command::Conductivity(a) => commands::conductivity(a),
        Command::Scatter(a) => commands::scatter(a),
        Command::Threshold(a) => commands::threshold(a),
        Command::Kinks(a) => commands::kinks(a),
    }
}

/// Parse, run and report; returns the process exit code
/// (0 success, 2 usage, 3 domain, 4 I/O).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    init_threads();
    match dispatch(&cli.command) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return 4;
            }
            0
        }
        Err(e) => {
            eprintln!("bpint: {e}");
            e.exit_code()
        }
    }
}
