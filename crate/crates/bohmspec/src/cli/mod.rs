//! Command-line front end: config parsing, scenario execution, and the
//! verification suite. Exit codes are a contract:
//!
//! - `0` success,
//! - `1` numerical validity flag tripped (outputs still written),
//! - `2` configuration error (including argument errors),
//! - `3` I/O failure.

pub mod config;
pub mod report;
pub mod scenario;
pub mod verify;

use crate::error::{Error, Result};
use config::{ScenarioConfig, VerifyScenario};
use std::path::{Path, PathBuf};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "BOHMSPEC_OUT_DIR";

/// Resolve the output path prefix: an explicit `--out` wins outright;
/// otherwise the config's `out` (or the scenario kind) is placed in the
/// directory named by `BOHMSPEC_OUT_DIR`, falling back to the working
/// directory.
pub fn resolve_prefix(cli_out: Option<&str>, config_out: Option<&str>, kind: &str) -> PathBuf {
    if let Some(out) = cli_out {
        return PathBuf::from(out);
    }
    let name = config_out.unwrap_or(kind);
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if !dir.is_empty() => Path::new(&dir).join(name),
        _ => PathBuf::from(name),
    }
}

fn run_inner(input: &str, out: Option<&str>, tol: Option<f64>, quiet: bool) -> Result<bool> {
    let mut config = if input == "verify" {
        ScenarioConfig::Verify(VerifyScenario { out: None })
    } else {
        let text = std::fs::read_to_string(input)?;
        config::parse_config(&text)?
    };
    if let Some(t) = tol {
        config.override_tol(t)?;
    }
    let prefix = resolve_prefix(out, config.out(), config.kind());
    let outcome = scenario::run_scenario(&config, &prefix)?;
    if !quiet {
        for line in &outcome.summary {
            println!("{line}");
        }
    }
    if !outcome.flags_clear {
        eprintln!("warning: validity flags tripped; outputs were written anyway");
    }
    Ok(outcome.flags_clear)
}

/// Entry point behind the binary: maps the scenario result onto the exit
/// code contract.
pub fn run(input: &str, out: Option<&str>, tol: Option<f64>, quiet: bool) -> i32 {
    match run_inner(input, out, tol, quiet) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => 3,
                _ => 2,
            }
        }
    }
}
