//! Command-line front end for the `bellissard` library.

mod args;
mod chain;
mod commands;
mod emit;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;

/// A one-line diagnostic; the process exits with status 1.
#[derive(Debug)]
pub struct Failure(pub String);

pub type Outcome<T> = Result<T, Failure>;

impl Failure {
    fn io<E: std::fmt::Display>(e: E) -> Failure {
        Failure(format!("i/o error: {e}"))
    }
}

impl From<bellissard::Error> for Failure {
    fn from(e: bellissard::Error) -> Failure {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&Failure(e.to_string())),
    };
    match run(&cli) {
        Ok(true) => ExitCode::from(2),
        Ok(false) => ExitCode::SUCCESS,
        Err(f) => fail(&f),
    }
}

/// Runs the subcommand and writes its output; `Ok(true)` when violations
/// were found.
fn run(cli: &Cli) -> Outcome<bool> {
    let emission = commands::execute(cli)?;
    match &cli.common.out {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            emission.write(cli.common.format, &mut w)?;
            w.flush().map_err(Failure::io)?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            emission.write(cli.common.format, &mut w)?;
            w.flush().map_err(Failure::io)?;
        }
    }
    Ok(emission.violations)
}

fn fail(f: &Failure) -> ExitCode {
    let line =
        f.0.lines()
            .find(|l| !l.trim().is_empty())
            .unwrap_or("error");
    let line = line.strip_prefix("error: ").unwrap_or(line);
    eprintln!("bellissard: {line}");
    ExitCode::from(1)
}
