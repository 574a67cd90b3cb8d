use std::process::ExitCode;

use clap::Parser;
use gschow_cli::args::Cli;
use gschow_cli::error::CliError;
use gschow_cli::output::render;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match gschow_cli::run(&cli) {
        Ok(outcome) => {
            print!("{}", render(&outcome.value, cli.json));
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("{}", CliError::CheckFailed("see report".into()));
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
