//! `dle`: decide sequents of basic lattice-expansion logics and run the
//! engine agreement self-test.
//!
//! Exit codes of `decide`: 0 valid, 1 invalid, 2 usage or input error,
//! 3 engine disagreement. `selftest` exits 0 when every property holds and 1
//! otherwise.

mod decide;
mod selftest;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use dle::signature::{bundled, load_signature, Signature};

/// Exit code for input, usage and I/O errors.
pub const EXIT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "dle", version, about = "Decision procedures for basic lattice-expansion logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide one sequent and print the proof, refutation or tableau.
    Decide(decide::DecideArgs),
    /// Check the engines against each other on a bounded corpus.
    Selftest(selftest::SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

/// Writes to stdout, treating a closed pipe as success so that output can be
/// piped into `head` and similar readers.
pub fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Resolves a bundled signature name or reads a JSON signature file.
pub fn resolve_signature(name: &str) -> Result<Signature> {
    if let Some(sig) = bundled::by_name(name) {
        return Ok(sig);
    }
    let path = PathBuf::from(name);
    if !path.exists() {
        bail!("`{name}` is neither a bundled signature ({}) nor a readable file", bundled::NAMES.join(", "));
    }
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    load_signature(&text).with_context(|| format!("loading signature from {}", path.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Decide(args) => decide::run(args),
        Command::Selftest(args) => selftest::run(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
