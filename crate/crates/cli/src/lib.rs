//! Command-line front end for `strata-core`: exact tables with a JSON
//! cache, symbolic expansions, end-to-end verification and plot data.

pub mod args;
pub mod cache;
pub mod error;
pub mod expand;
pub mod plotdata;
pub mod table;
pub mod verify;

use std::io::Write;

pub use args::{Cli, Command};
pub use error::{CliError, CliResult};

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Table(a) => table::run(a, out),
        Command::Expand(a) => expand::run(a, out),
        Command::Verify(a) => verify::run(a, out),
        Command::Plotdata(a) => plotdata::run(a, out),
    }
}

/// Number of significant decimal digits carried by `bits` binary digits.
pub(crate) fn decimal_digits(bits: u32) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2).floor() as usize)
        .saturating_sub(2)
        .max(1)
}
