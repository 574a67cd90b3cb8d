//! Command-line front end for the `gschow` library.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod output;
pub mod verify;

use args::{Cli, Command, FourierCommand};
use commands::Outcome;
use error::CliResult;

/// Runs one parsed invocation and returns its report.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Deg { product, expr } => commands::deg(product, expr),
        Command::Basis { product, k, list } => commands::basis(product, *k, *list, cli.max_cells),
        Command::Reduce { product, expr, certificate } => commands::reduce(product, expr, *certificate, cli.max_cells),
        Command::Restrict { product, expr } => commands::restrict(product, expr),
        Command::Glue { product, tuple } => commands::glue_tuple(product, tuple),
        Command::Pairing { product, functions } => commands::pairing_cmd(product, functions),
        Command::Fourier { command } => match command {
            FourierCommand::Convert { d, from, expr } => commands::fourier_convert(*d, *from, expr),
            FourierCommand::Deg { words } => commands::fourier_deg(words),
            FourierCommand::Vanish { words } => commands::fourier_vanish(words),
            FourierCommand::CheckRelations { d } => commands::fourier_check_relations(*d),
            FourierCommand::CheckIso { d, degree } => commands::fourier_check_iso(*d, *degree),
        },
        Command::Verify { suite, seed } => Ok(verify::verify(*suite, *seed)),
    }
}
