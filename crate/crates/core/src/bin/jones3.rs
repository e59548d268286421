use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use jones3::cli::{run, Cli, CliError, Outcome, RunConfig};

fn main() -> ExitCode {
    let outcome = match Cli::try_parse() {
        Ok(cli) => match RunConfig::try_from(cli) {
            Ok(config) => run(&config),
            Err(err) => Outcome::from_error(&err),
        },
        Err(err) if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = err.print();
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let mut outcome = Outcome::from_error(&CliError::Usage(err.kind().to_string()));
            outcome.stderr = err.render().to_string();
            outcome
        }
    };

    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status as u8)
}
