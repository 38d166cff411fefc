mod args;
mod batch;
mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use args::Cli;
use commands::{EXIT_INVALID, EXIT_USAGE};

fn print(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_USAGE,
                _ => {
                    print(&json!({"error": {"reason": "Usage", "message": e.kind().to_string()}}));
                    EXIT_USAGE
                }
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match commands::run(cli.command) {
        Ok(outcome) => {
            print(&outcome.report);
            ExitCode::from(outcome.code as u8)
        }
        Err(failure) => {
            print(&failure.to_json());
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
