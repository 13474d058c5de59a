//! `key=value` config files supplying defaults for the common flags.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::failure::{bad_input, CliFailure};

/// Parses a config file of `key=value` lines; `#` starts a comment.
pub fn read_config(path: &Path) -> Result<HashMap<String, String>, CliFailure> {
    let text = fs::read_to_string(path)
        .map_err(|e| bad_input(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            bad_input(format!("config line {} is not key=value: '{raw}'", lineno + 1))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Flag value if given, else the config entry, else `missing` error.
pub fn resolve<T: std::str::FromStr>(
    flag: Option<T>,
    config: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliFailure> {
    if let Some(v) = flag {
        return Ok(Some(v));
    }
    match config.get(key) {
        Some(raw) => raw
            .parse()
            .map(Some)
            .map_err(|_| bad_input(format!("bad config value for '{key}': '{raw}'"))),
        None => Ok(None),
    }
}

pub fn require<T>(value: Option<T>, key: &str) -> Result<T, CliFailure> {
    value.ok_or_else(|| bad_input(format!("missing required parameter '{key}' (flag or config)")))
}
