//! Defaults from an optional `key = value` file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

pub const CACHE_ENV: &str = "MOTIVIC_CACHE_DIR";

const KEYS: [&str; 10] = [
    "order", "imax", "jmax", "max", "cap", "trials", "seed", "format", "cache_dir", "value",
];

#[derive(Clone, Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
            let k = k.trim().replace('-', "_");
            if !KEYS.contains(&k.as_str()) {
                return Err(CliError::Usage(format!("config line {}: unknown key {k:?}", n + 1)));
            }
            values.insert(k, v.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// `flag`, else the config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.values.get(key) {
            Some(s) => s
                .parse()
                .map_err(|_| CliError::Usage(format!("config value {key} = {s:?} does not parse"))),
            None => Ok(default),
        }
    }

    /// Flag, then the environment variable, then the config file.
    pub fn cache_dir(&self, flag: Option<PathBuf>) -> Option<PathBuf> {
        flag.or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
            .or_else(|| self.values.get("cache_dir").map(PathBuf::from))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let c = Config::parse("# defaults\norder = 12\nformat=json\n").unwrap();
        assert_eq!(c.pick(None, "order", 30usize).unwrap(), 12);
        assert_eq!(c.pick(Some(5usize), "order", 30).unwrap(), 5);
        assert_eq!(c.pick(None, "imax", 7usize).unwrap(), 7);
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("order").is_err());
        assert!(Config::parse("order = x").unwrap().pick(None, "order", 1usize).is_err());
    }
}
