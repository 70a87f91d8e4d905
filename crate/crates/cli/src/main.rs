use std::process::ExitCode;

use clap::Parser;
use pilot_overlap::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let config = RunConfig::from_cli(Cli::parse());
    match run(&config) {
        Ok(report) => {
            for path in &report.files {
                println!("{}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("pilot-overlap: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
