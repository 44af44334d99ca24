//! Command dispatch for the `thimble` binary. Every subcommand is a thin
//! wrapper over library calls; outputs are byte-deterministic for fixed
//! inputs.

pub mod commands;
pub mod doc;
pub mod render;

use clap::error::ErrorKind;
use clap::Parser;

use commands::{dispatch, Cli};

/// Run one command line (`argv` without the program name). Returns the exit
/// code and the full output text (stdout-style; errors are reported in the
/// same stream with an `error:` prefix).
pub fn run_command<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut full: Vec<String> = vec!["thimble".to_string()];
    full.extend(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(&full) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.to_string());
        }
    };
    match dispatch(&cli) {
        Ok(out) => (out.code, out.text),
        Err(e) => {
            let code = match &e {
                thimble::Error::Input(_) | thimble::Error::Unsupported(_) => 2,
                thimble::Error::Invariant(_) | thimble::Error::Precondition(_) => 1,
            };
            (code, format!("error: {e}\n"))
        }
    }
}
