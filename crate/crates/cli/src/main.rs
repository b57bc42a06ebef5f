use std::process::ExitCode;

use clap::Parser;
use raman_cli::{execute, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::parse();
    let code = match execute(&config) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("raman-lab: {err}");
            err.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
