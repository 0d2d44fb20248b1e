use std::process::ExitCode;

use clap::Parser;
use ugen::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code() as u8);
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("report serialises") + "\n";
    let written = match &cli.out {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Some(f) = &report.summary.first_failure {
        eprintln!("failure: {f}");
    }
    ExitCode::from(report.exit_code() as u8)
}
