//! `treealg`: command-line front end for the decorated-tree algebra crate.
//!
//! Exit codes: 0 when every asserted check passes, 1 on a failed check,
//! 2 on unparsable input, 3 on an internal invariant violation.

mod args;
mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = commands::dispatch(&cli).and_then(|out| Ok((out.render(cli.format)?, out.pass)));
    match result {
        Ok((text, pass)) => {
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
