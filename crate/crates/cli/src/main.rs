use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use egh_cli::{execute, exit_code, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match execute(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.options.format));
            exit_code(&report)
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    };
    // timing stays off stdout so reports are reproducible byte for byte
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(code as u8)
}
