use std::process::ExitCode;

use clap::Parser;
use qdfe_cli::app::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdfe: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
