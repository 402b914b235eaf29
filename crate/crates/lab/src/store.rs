//! Persistence of the π₅,₂ matrix.

use std::fs;
use std::path::{Path, PathBuf};

use fo52_core::fobracket::Pi52Map;

use crate::LabError;

pub const CACHE_ENV: &str = "FO52_CACHE_DIR";
pub const MATRIX_FILE: &str = "pi52.json";

/// `$FO52_CACHE_DIR/pi52.json`, or `./pi52.json` when the variable is unset.
pub fn default_matrix_path() -> PathBuf {
    match std::env::var_os(CACHE_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir).join(MATRIX_FILE),
        _ => PathBuf::from(MATRIX_FILE),
    }
}

pub fn save(map: &Pi52Map, path: &Path) -> Result<(), LabError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, serde_json::to_string(&map.to_json())?)?;
    Ok(())
}

pub fn load(path: &Path) -> Result<Pi52Map, LabError> {
    let text = fs::read_to_string(path)?;
    let v: serde_json::Value = serde_json::from_str(&text)?;
    Ok(Pi52Map::from_json(&v)?)
}

/// Loads a matrix and refuses it unless it re-verifies (rank 126, canonical
/// columns, fresh-point equations).
pub fn load_certified(path: &Path) -> Result<Pi52Map, LabError> {
    let map = load(path)?;
    let v = map.verify();
    if !v.passed() {
        return Err(LabError::Input(format!(
            "{} is not a certified pi52 matrix: {v:?}",
            path.display()
        )));
    }
    Ok(map)
}
