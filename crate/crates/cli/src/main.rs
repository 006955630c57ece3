use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use theta_graded_cli::{run, Cli};

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let outcome = run(&cli);
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.stdout).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(outcome.stdout.as_bytes())?,
    }
    std::io::stderr().write_all(outcome.stderr.as_bytes())?;
    Ok(ExitCode::from(outcome.code as u8))
}
