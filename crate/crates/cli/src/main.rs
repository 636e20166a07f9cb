use std::process::ExitCode;

use clap::Parser;
use mub_cli::{run, Cli, EXIT_USAGE, TOL_ENV};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let env_tol = std::env::var(TOL_ENV).ok();
    let outcome = match run(&cli, env_tol.as_deref()) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let written = match &cli.global.output {
        Some(path) => std::fs::write(path, &outcome.body)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{}", outcome.body);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    ExitCode::from(outcome.exit_code as u8)
}
