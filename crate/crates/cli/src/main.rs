mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{CatalogAction, Cli, Command};
use commands::Failure;

fn report(failure: &Failure) {
    let (message, diagnostics) = match failure {
        Failure::Input(m) | Failure::Mismatch(m) => (m.as_str(), Vec::new()),
        Failure::Invalid { message, diagnostics } => (message.as_str(), diagnostics.clone()),
    };
    let record = json!({
        "error": message,
        "exit_code": failure.exit_code(),
        "diagnostics": diagnostics,
    });
    eprintln!("{record}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: String = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let (result, output) = match &cli.command {
        Command::Check(a) => (commands::check(a, &command), &a.output),
        Command::Invariants(a) => (commands::invariants(a, &command), &a.output),
        Command::Table(a) => (commands::table(a, &command), &a.output),
        Command::Verify(a) => (commands::verify(a, &command), &a.output),
        Command::Catalog { action } => {
            let output = match action {
                CatalogAction::List { output } | CatalogAction::Export { output, .. } => output,
            };
            (commands::catalog(action, &command), output)
        }
    };
    let failure = match result {
        Ok(out) => match commands::emit(output, &out.text) {
            Ok(()) => out.failure,
            Err(f) => Some(f),
        },
        Err(f) => Some(f),
    };
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            report(&f);
            ExitCode::from(f.exit_code())
        }
    }
}
