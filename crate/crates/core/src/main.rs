use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use git_lab::cli::{execute, exit_code, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
