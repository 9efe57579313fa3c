//! Command-line front end: each command writes `<name>.csv` and a
//! `<name>.json` sidecar holding the full configuration, per-cell flags and
//! timing. `rerun` reproduces the CSV from the sidecar alone.

pub mod args;
pub mod commands;
pub mod config_file;
pub mod error;
pub mod output;
pub mod ranges;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::Parser;
use serde_json::{json, Value};

pub use args::{Cli, Command};
pub use error::CliError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Files written by one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub csv: PathBuf,
    pub sidecar: PathBuf,
    pub rows: usize,
    pub failed: usize,
    pub stdout: Option<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            EXIT_PARTIAL
        } else {
            EXIT_OK
        }
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn load_sidecar(path: &std::path::Path) -> Result<Command, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let config = value
        .get("config")
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("{}: no `config` record", path.display())))?;
    serde_json::from_value(config).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Runs one command and writes its output pair.
pub fn run(command: Command) -> Result<Outcome, CliError> {
    let mut command = match command {
        Command::Rerun(r) => {
            let mut recorded = load_sidecar(&r.sidecar)?;
            if matches!(recorded, Command::Rerun(_)) {
                return Err(CliError::Usage("sidecar records a rerun".into()));
            }
            let out = recorded.output_mut().expect("not a rerun");
            if let Some(dir) = r.out_dir {
                out.out_dir = dir;
            }
            if r.workers.is_some() {
                out.workers = r.workers;
            }
            recorded
        }
        other => other,
    };
    let out = command.output_mut().expect("not a rerun");
    let workers = out.workers.unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    out.workers = Some(workers);
    let out = out.clone();
    let stem = out.name.clone().unwrap_or_else(|| command.name().to_string());
    if stem.is_empty() || stem.contains(['/', '\\']) {
        return Err(CliError::Usage(format!("--name must be a plain file stem, got `{stem}`")));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Compute(format!("cannot start {workers} workers: {e}")))?;
    let started = Instant::now();
    let result = pool.install(|| commands::execute(&command))?;
    let elapsed = started.elapsed().as_secs_f64();
    let finished = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());

    let sidecar = json!({
        "tool": "critqfi",
        "version": env!("CARGO_PKG_VERSION"),
        "config": command,
        "csv": format!("{stem}.csv"),
        "columns": result.table.units(),
        "rows": result.table.rows.len(),
        "failed_cells": result.failed,
        "results": result.details,
        "wall_clock_seconds": elapsed,
        "finished_unix_seconds": finished,
    });
    let (csv, json) = output::write_pair(&out.out_dir, &stem, &result.table, &sidecar)?;
    Ok(Outcome {
        csv,
        sidecar: json,
        rows: result.table.rows.len(),
        failed: result.failed,
        stdout: result.stdout,
    })
}

/// Parses `args` (program name first), runs, reports, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = match config_file::expand(args.into_iter().map(Into::into).collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(o) => {
            if let Some(s) = &o.stdout {
                print!("{s}");
            }
            eprintln!("wrote {} ({} rows) and {}", o.csv.display(), o.rows, o.sidecar.display());
            if o.failed > 0 {
                eprintln!("{} cells failed; see the sidecar for details", o.failed);
            }
            o.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
