use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use hensel_core::oracle::DEFAULT_PRECISION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

/// Exact computations in the henselization of Q under a p-adic valuation.
///
/// Reads commands from the script file, or from standard input when no
/// script is given.
#[derive(Debug, Parser)]
#[command(name = "hensel", version)]
struct Args {
    /// Script to run, one command per line.
    #[arg(long)]
    script: Option<PathBuf>,
    /// Output format; `structured` prints one JSON object per command.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Default p-adic precision of the `check` command.
    #[arg(long, default_value_t = DEFAULT_PRECISION, value_parser = clap::value_parser!(u32).range(1..))]
    precision: u32,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let script = match &args.script {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let script = match script {
        Ok(s) => s,
        Err(e) => {
            eprintln!("hensel: cannot read script: {e}");
            return ExitCode::from(1);
        }
    };
    let outcome = hensel_cli::run_script(&script, args.format == Format::Structured, args.precision);
    let _ = io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.exit_code as u8)
}
