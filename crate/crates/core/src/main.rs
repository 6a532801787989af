use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use skewcheck::cli::{run, Cli, RunConfig, EXIT_INPUT};
use skewcheck::io::write_text;

fn main() -> ExitCode {
    let config = RunConfig::from(Cli::parse());
    let outcome = run(&config);
    eprint!("{}", outcome.diagnostics);
    let written = match &config.out {
        Some(path) => write_text(path, &outcome.output).map_err(|e| e.to_string()),
        None => std::io::stdout()
            .write_all(outcome.output.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    ExitCode::from(outcome.code as u8)
}
