mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use config::{Args, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid configuration: {0}")]
    Core(#[from] salpeter_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Core(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

const THREADS_VAR: &str = "SALPETER_THREADS";

fn init_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Config(format!("{THREADS_VAR}: expected a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("{THREADS_VAR}: {e}")))
}

/// Returns whether every threshold held.
fn run(args: Args) -> Result<bool, CliError> {
    let cfg = RunConfig::from_args(args)?;
    init_threads()?;
    let report = commands::run(&cfg)?;
    let csv = report.table.to_csv();
    match &cfg.output_path {
        Some(path) => {
            let mut files = vec![(path.clone(), csv)];
            if let Some(svg) = report.svg {
                files.push((output::svg_path(path), svg));
            }
            output::write_all_or_nothing(&files)?;
        }
        None => std::io::stdout().lock().write_all(csv.as_bytes())?,
    }
    for line in &report.summary {
        eprintln!("{line}");
    }
    for v in &report.violations {
        eprintln!("threshold violated: {v}");
    }
    Ok(report.violations.is_empty())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
