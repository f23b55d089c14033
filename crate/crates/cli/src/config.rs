//! Simple `key=value` configuration files.
//!
//! Values act as defaults for the long flags of the same name; anything
//! given on the command line wins.  Lines starting with `#` and blank
//! lines are ignored.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

use crate::AppError;

/// Parsed configuration defaults.
#[derive(Debug, Default)]
pub struct Settings {
    values: HashMap<String, String>,
}

impl Settings {
    /// Loads a config file; a missing `path` yields empty settings.
    pub fn load(path: Option<&Path>) -> Result<Self, AppError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(AppError::Flag(format!(
                    "config line {}: expected key=value, got `{line}`",
                    lineno + 1
                )));
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { values })
    }

    /// Raw string lookup.
    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Typed lookup; a present-but-unparsable value is a usage error.
    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, AppError> {
        match self.raw(key) {
            None => Ok(None),
            Some(s) => s.parse::<T>().map(Some).map_err(|_| {
                AppError::Flag(format!("config key `{key}`: cannot parse `{s}`"))
            }),
        }
    }

    /// Flag value if given, else config value, else `default`.
    pub fn resolve<T: FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, AppError> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.get(key)?.unwrap_or(default)),
        }
    }

    /// Flag value if given, else config value, else a usage error naming
    /// the missing flag.
    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, AppError> {
        match flag {
            Some(v) => Ok(v),
            None => self
                .get(key)?
                .ok_or_else(|| AppError::Flag(format!("missing required flag --{key}"))),
        }
    }
}
