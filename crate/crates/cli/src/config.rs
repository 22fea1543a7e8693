//! `key = value` config files whose keys mirror the long flag names.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

/// Every key any subcommand understands.
const KNOWN_KEYS: &[&str] = &[
    "mass",
    "well-depth",
    "half-width",
    "hbar",
    "n-max",
    "format",
    "output",
    "sweep-var",
    "from",
    "to",
    "steps",
    "level",
    "method",
    "order",
    "grid-n",
    "levels",
    "richardson",
    "tolerance",
    "pressure-tolerance",
    "eigen-pressure-tolerance",
];

#[derive(Debug, Default)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", i + 1))
            })?;
            let key = key.trim().trim_start_matches("--").to_string();
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key '{key}'",
                    i + 1
                )));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config key '{key}': invalid value '{v}'"))),
        }
    }
}

/// Keeps the flag value when present, otherwise falls back to the config.
pub fn merge<T: FromStr>(
    flag: &mut Option<T>,
    cfg: &ConfigFile,
    key: &str,
) -> Result<(), CliError> {
    if flag.is_none() {
        *flag = cfg.get(key)?;
    }
    Ok(())
}
