//! Flat `key=value` settings with command-line overrides.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Parses a `key=value` file. Blank lines and `#` comments are skipped;
/// every key must be in `allowed`.
pub fn parse_config(text: &str, allowed: &[&str]) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::config(format!("line {}: expected key=value", i + 1)))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(Error::config(format!("unknown key `{key}`")));
        }
        if map.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(Error::config(format!("duplicate key `{key}`")));
        }
    }
    Ok(map)
}

/// Merged settings for one run. Remembers every value read, defaults
/// included, so the run can be written back out as a manifest.
#[derive(Debug, Default)]
pub struct Settings {
    values: BTreeMap<String, String>,
    resolved: BTreeMap<String, String>,
}

impl Settings {
    /// `overrides` win over `base`.
    pub fn new(base: BTreeMap<String, String>, overrides: BTreeMap<String, String>) -> Self {
        let mut values = base;
        values.extend(overrides);
        Settings {
            values,
            resolved: BTreeMap::new(),
        }
    }

    pub fn raw(&mut self, key: &str) -> Option<String> {
        let v = self.values.get(key).cloned();
        if let Some(v) = &v {
            self.resolved.insert(key.to_string(), v.clone());
        }
        v
    }

    pub fn get<T: FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::config(format!("invalid value for `{key}`: {v:?}"))),
        }
    }

    pub fn get_or<T: FromStr + ToString>(&mut self, key: &str, default: T) -> Result<T> {
        match self.get(key)? {
            Some(v) => Ok(v),
            None => {
                self.resolved.insert(key.to_string(), default.to_string());
                Ok(default)
            }
        }
    }

    pub fn require<T: FromStr>(&mut self, key: &str) -> Result<T> {
        self.get(key)?
            .ok_or_else(|| Error::config(format!("missing key `{key}`")))
    }

    /// The resolved settings in config syntax, headed by comment lines.
    pub fn manifest(&self, header: &[String]) -> String {
        let mut out = String::new();
        for h in header {
            let _ = writeln!(out, "# {h}");
        }
        for (k, v) in &self.resolved {
            let _ = writeln!(out, "{k}={v}");
        }
        out
    }
}
