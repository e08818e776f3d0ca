//! Optional `key=value` defaults file; explicit flags take precedence.
//!
//! The file is plain text: one `key=value` entry per line, blank lines and
//! `#` comments skipped, keys restricted to the names of the flags they
//! stand in for. Unknown keys are rejected outright so a typo cannot
//! silently fall back to a built-in default.

use crate::CliError;
use std::collections::HashMap;
use std::fs;
use std::path::Path;

/// Keys a defaults file may set, one per overridable flag.
const KNOWN_KEYS: [&str; 10] = [
    "count",
    "epsilon",
    "family",
    "format",
    "hbar",
    "out",
    "resolution",
    "seed",
    "tmin-variant",
    "tol",
];

/// Validated contents of a defaults file; empty when no file was given.
#[derive(Debug, Default)]
pub struct Defaults {
    entries: HashMap<String, String>,
}

impl Defaults {
    /// No defaults at all.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Reads and validates a defaults file.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|err| {
            CliError::Usage(format!("cannot read config {}: {err}", path.display()))
        })?;
        parse_lines(&text)
    }

    /// The raw value stored for `key`, if any.
    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Parses `key=value` lines, rejecting unknown keys and malformed lines.
fn parse_lines(text: &str) -> Result<Defaults, CliError> {
    let mut entries = HashMap::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "config line {}: expected key=value, got {line:?}",
                index + 1
            ))
        })?;
        let (key, value) = (key.trim(), value.trim());
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key {key:?}",
                index + 1
            )));
        }
        entries.insert(key.to_string(), value.to_string());
    }
    Ok(Defaults { entries })
}
