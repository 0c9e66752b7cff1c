use std::process::ExitCode;

use apollonian_cli::config::Cli;
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match apollonian_cli::run(&cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("apollonian: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
