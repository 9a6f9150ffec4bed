use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sds_cli::{execute, Cli, CliError};

fn run(cli: &Cli) -> Result<(), CliError> {
    let text = execute(cli)?.render();
    match cli.command.out() {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
