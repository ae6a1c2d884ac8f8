//! `quadlab`: seeded, deterministic experiment harness over the core
//! routines. Subcommands: `run`, `report`, `oracle-xcheck`.

mod config;
mod manifest;
mod report;
mod runner;
mod util;

use clap::{Parser, Subcommand};
use quadlab_core::CoreError;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use config::{ExperimentConfig, ExperimentKind};
use manifest::{sha256_hex, timestamp, RunManifest};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NONCONVERGENCE: u8 = 3;

#[derive(Parser)]
#[command(name = "quadlab", version, about = "quadratic bilinear averages laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config; writes a CSV and a manifest next to it.
    Run { config: PathBuf },
    /// Summarize a run CSV: fit exponents and inequality violations.
    Report { csv: PathBuf },
    /// Run a dual-route consistency config (kind must be oracle-xcheck).
    OracleXcheck { config: PathBuf },
}

fn error_json(class: &str, message: &str) -> String {
    serde_json::json!({ "class": class, "message": message }).to_string()
}

fn fail(class: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", error_json(class, message));
    ExitCode::from(code)
}

fn fail_core(err: &CoreError) -> ExitCode {
    match err {
        CoreError::NonConvergence { .. } => {
            fail("non-convergence", &err.to_string(), EXIT_NONCONVERGENCE)
        }
        _ => fail("config", &err.to_string(), EXIT_CONFIG),
    }
}

fn write_artifacts(
    config: &ExperimentConfig,
    config_bytes: &[u8],
    out: &runner::RunOutput,
    workers: usize,
    started_at: String,
) -> Result<(), String> {
    let mut writer = csv::WriterBuilder::new()
        .from_path(&config.output)
        .map_err(|e| format!("cannot write {}: {e}", config.output.display()))?;
    writer
        .write_record(&out.header)
        .and_then(|()| out.rows.iter().try_for_each(|row| writer.write_record(row)))
        .map_err(|e| format!("csv write failed: {e}"))?;
    writer.flush().map_err(|e| format!("csv flush failed: {e}"))?;

    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        kind: config.experiment.name().to_string(),
        seed: config.seed,
        config_sha256: sha256_hex(config_bytes),
        workers,
        started_at,
        finished_at: timestamp(),
        rows: out.rows.len(),
        violations: out.violations,
        output: config.output.display().to_string(),
        provenance: out.provenance.clone(),
    };
    let manifest_path = manifest_path(&config.output);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    std::fs::write(&manifest_path, text)
        .map_err(|e| format!("cannot write {}: {e}", manifest_path.display()))
}

fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_os_string();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn run_command(path: &Path, require_xcheck: bool) -> ExitCode {
    let started_at = timestamp();
    let (config, config_bytes) = match ExperimentConfig::load(path) {
        Ok(loaded) => loaded,
        Err(err) => return fail_core(&err),
    };
    if require_xcheck && !matches!(config.experiment, ExperimentKind::OracleXcheck { .. }) {
        return fail(
            "config",
            &format!(
                "oracle-xcheck requires kind oracle-xcheck, got {}",
                config.experiment.name()
            ),
            EXIT_CONFIG,
        );
    }
    let workers = match util::worker_count() {
        Ok(n) => n,
        Err(err) => return fail_core(&err),
    };
    let out = match runner::execute(&config, workers) {
        Ok(out) => out,
        Err(err) => return fail_core(&err),
    };
    if let Err(message) = write_artifacts(&config, &config_bytes, &out, workers, started_at) {
        return fail("io", &message, EXIT_CONFIG);
    }
    println!(
        "{}: {} rows, {} violations -> {}",
        config.experiment.name(),
        out.rows.len(),
        out.violations,
        config.output.display()
    );
    if !out.converged {
        return fail(
            "non-convergence",
            "trajectory did not settle within the schedule",
            EXIT_NONCONVERGENCE,
        );
    }
    if out.violations > 0 {
        return ExitCode::from(EXIT_VIOLATION);
    }
    ExitCode::from(EXIT_OK)
}

fn report_command(path: &Path) -> ExitCode {
    match report::summarize(path) {
        Ok(summary) => {
            for line in &summary.lines {
                println!("{line}");
            }
            if summary.violations > 0 {
                ExitCode::from(EXIT_VIOLATION)
            } else {
                ExitCode::from(EXIT_OK)
            }
        }
        Err(err) => fail("config", &err.to_string(), EXIT_CONFIG),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config } => run_command(&config, false),
        Command::Report { csv } => report_command(&csv),
        Command::OracleXcheck { config } => run_command(&config, true),
    }
}
