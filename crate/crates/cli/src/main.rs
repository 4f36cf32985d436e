//! `divzero` — exact computations in divergence-zero Lie algebras and
//! their weight modules.
//!
//! Exit codes: 0 when every requested invariant holds, 1 when a check
//! or expectation fails, 2 on malformed input or usage errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

use commands::Command;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser, Debug)]
#[command(name = "divzero", version, about = "Exact divergence-zero Lie algebra computations")]
struct Cli {
    /// Output format for stdout.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the JSON payload to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock timing in report payloads.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

/// Honors `DIVZERO_THREADS`; absent means one thread per core.
fn init_threads() -> Result<(), String> {
    match std::env::var("DIVZERO_THREADS") {
        Ok(raw) => {
            let k: usize = raw
                .parse()
                .map_err(|_| format!("DIVZERO_THREADS must be a positive integer, got {raw:?}"))?;
            if k == 0 {
                return Err("DIVZERO_THREADS must be a positive integer, got 0".into());
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build_global()
                .map_err(|e| e.to_string())
        }
        Err(_) => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let started = cli.timing.then(Instant::now);
    match commands::run(cli.command, started) {
        Ok(outcome) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, outcome.payload.clone() + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                eprintln!("wrote {}", path.display());
            }
            match cli.format {
                Format::Json => {
                    if cli.out.is_none() {
                        println!("{}", outcome.payload);
                    }
                }
                Format::Table => print!("{}", outcome.table),
            }
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
