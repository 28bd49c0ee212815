//! Plot-ready CSV and summary JSON emission.
//!
//! Every curve file has the schema `beta_db,cdf`: one row per step of a
//! right-continuous piecewise-constant CDF, holding the value at and to the
//! right of the breakpoint. Files are byte-deterministic for a given
//! configuration and seed.

use crate::error::CliError;
use corrblock::sinr::linear_to_db;
use std::fs;
use std::path::{Path, PathBuf};

pub fn ensure_out_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))
}

/// Write `(beta_linear, cdf)` steps as `beta_db,cdf` rows.
pub fn write_curve(
    dir: &Path,
    name: &str,
    steps: impl IntoIterator<Item = (f64, f64)>,
) -> Result<PathBuf, CliError> {
    let mut text = String::from("beta_db,cdf\n");
    for (beta, value) in steps {
        text.push_str(&format!("{},{}\n", linear_to_db(beta), value));
    }
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

pub fn write_summary(dir: &Path, value: &serde_json::Value) -> Result<PathBuf, CliError> {
    let path = dir.join("summary.json");
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::io(format!("summary: {e}")))?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    Ok(path)
}

/// Write arbitrary CSV text (used by the correlation sweep).
pub fn write_text(dir: &Path, name: &str, text: &str) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    Ok(path)
}
