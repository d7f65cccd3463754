use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use quadunit_cli::args::Cli;
use quadunit_cli::{run, RunConfig};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = RunConfig::from(cli);
    let outcome = run(&config);
    for m in &outcome.messages {
        eprintln!("{m}");
    }
    if config.output.is_none() && outcome.status != 2 {
        let _ = std::io::stdout().lock().write_all(outcome.output.as_bytes());
    }
    ExitCode::from(outcome.status)
}
