//! `adjminor`: batch front end for adjacent 2-minor ideals of collections of cells.

use std::process::ExitCode;

use adjminor_cli::{commands, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout().lock();
    match commands::run(&cli, stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("adjminor: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
