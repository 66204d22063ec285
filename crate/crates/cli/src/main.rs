//! `hypercover`: runs the sampling algorithms on a hypergraph or graph,
//! evaluates a solution's coverage, and generates synthetic graphs.

mod args;
mod eval;
mod gen;
mod instance;
mod report;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run::run(&args),
        Command::Eval(args) => eval::eval(&args),
        Command::Gen(args) => gen::gen(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

/// Writes `value` as pretty JSON to `out`, or to stdout when absent.
pub(crate) fn emit<T: serde::Serialize>(
    value: &T,
    out: Option<&std::path::Path>,
) -> anyhow::Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
