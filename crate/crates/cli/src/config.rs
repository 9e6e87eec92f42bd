//! Line-oriented `key = value` configuration with `#` comments.
//!
//! Keys are validated against the active subcommand's allowlist; every
//! parameter lookup is recorded (with a default marker) so reports can echo
//! the full effective input set.

use std::cell::RefCell;
use std::collections::HashSet;

use chtn_core::units::UnitMode;

use crate::errors::{CliError, CliResult};

pub const DEFAULT_SEED: u64 = 42;
pub const OUT_DIR_ENV: &str = "CHTN_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "out";

/// Compact rendering for echoed default values.
pub fn fmt_default(v: f64) -> String {
    if v == 0.0 || (v.abs() >= 1e-4 && v.abs() < 1e7) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Keys accepted in any subcommand's config file.
pub const GLOBAL_KEYS: &[&str] = &[
    "seed",
    "out",
    "workers",
    "unit_mode",
    "constant.hbar",
    "constant.c",
    "constant.g3",
    "constant.planck_time",
];

#[derive(Debug, Clone)]
pub struct Entry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

/// Parsed and key-validated configuration document.
#[derive(Debug, Clone)]
pub struct ConfigDoc {
    entries: Vec<Entry>,
}

impl ConfigDoc {
    /// Parse the document and reject unknown or duplicated keys.
    /// `repeatable` keys may occur multiple times (the particle table).
    pub fn parse(text: &str, allowed: &[&str], repeatable: &[&str]) -> CliResult<Self> {
        let mut entries = Vec::new();
        let mut seen: HashSet<String> = HashSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            if stripped.trim().is_empty() {
                continue;
            }
            let Some((key, value)) = stripped.split_once('=') else {
                return Err(CliError::config_at(
                    line,
                    format!("expected `key = value`, got `{}`", stripped.trim()),
                ));
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                return Err(CliError::config_at(line, "empty key"));
            }
            if !allowed.contains(&key.as_str()) && !GLOBAL_KEYS.contains(&key.as_str()) {
                return Err(CliError::config_at(line, format!("unknown key '{key}'")));
            }
            if !repeatable.contains(&key.as_str()) && !seen.insert(key.clone()) {
                return Err(CliError::config_at(line, format!("duplicate key '{key}'")));
            }
            entries.push(Entry { line, key, value });
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn get_all(&self, key: &str) -> Vec<&Entry> {
        self.entries.iter().filter(|e| e.key == key).collect()
    }
}

/// One echoed parameter for the human-readable report.
#[derive(Debug, Clone)]
pub struct EchoEntry {
    pub key: String,
    pub value: String,
    pub defaulted: bool,
}

/// Typed, echo-recording access to a parsed document.
pub struct Params<'a> {
    doc: &'a ConfigDoc,
    echo: RefCell<Vec<EchoEntry>>,
}

impl<'a> Params<'a> {
    pub fn new(doc: &'a ConfigDoc) -> Self {
        Self {
            doc,
            echo: RefCell::new(Vec::new()),
        }
    }

    fn record(&self, key: &str, value: String, defaulted: bool) {
        self.echo.borrow_mut().push(EchoEntry {
            key: key.to_string(),
            value,
            defaulted,
        });
    }

    /// Note a derived default (e.g. a radius computed from other inputs).
    pub fn note_derived(&self, key: &str, value: String) {
        self.record(key, value, true);
    }

    pub fn echo_entries(&self) -> Vec<EchoEntry> {
        self.echo.borrow().clone()
    }

    pub fn f64_opt(&self, key: &str) -> CliResult<Option<f64>> {
        match self.doc.get(key) {
            None => Ok(None),
            Some(e) => {
                let v: f64 = e.value.parse().map_err(|_| {
                    CliError::config_at(
                        e.line,
                        format!("{key}: expected a number, got '{}'", e.value),
                    )
                })?;
                if !v.is_finite() {
                    return Err(CliError::config_at(e.line, format!("{key}: non-finite value")));
                }
                self.record(key, e.value.clone(), false);
                Ok(Some(v))
            }
        }
    }

    pub fn f64(&self, key: &str, default: f64) -> CliResult<f64> {
        match self.f64_opt(key)? {
            Some(v) => Ok(v),
            None => {
                self.record(key, fmt_default(default), true);
                Ok(default)
            }
        }
    }

    /// Numeric parameter validated against a module precondition; the
    /// diagnostic cites the violated range.
    pub fn f64_checked(
        &self,
        key: &str,
        default: f64,
        valid: impl Fn(f64) -> bool,
        range: &str,
    ) -> CliResult<f64> {
        let v = self.f64(key, default)?;
        if !valid(v) {
            let line = self.doc.get(key).map(|e| e.line);
            return Err(CliError::Config {
                line,
                message: format!("{key} = {v} outside {range}"),
            });
        }
        Ok(v)
    }

    pub fn usize(&self, key: &str, default: usize) -> CliResult<usize> {
        match self.doc.get(key) {
            None => {
                self.record(key, format!("{default}"), true);
                Ok(default)
            }
            Some(e) => {
                let v: usize = e.value.parse().map_err(|_| {
                    CliError::config_at(
                        e.line,
                        format!("{key}: expected a non-negative integer, got '{}'", e.value),
                    )
                })?;
                self.record(key, e.value.clone(), false);
                Ok(v)
            }
        }
    }

    pub fn u64(&self, key: &str, default: u64) -> CliResult<u64> {
        match self.doc.get(key) {
            None => {
                self.record(key, format!("{default}"), true);
                Ok(default)
            }
            Some(e) => {
                let v: u64 = e.value.parse().map_err(|_| {
                    CliError::config_at(
                        e.line,
                        format!("{key}: expected a non-negative integer, got '{}'", e.value),
                    )
                })?;
                self.record(key, e.value.clone(), false);
                Ok(v)
            }
        }
    }

    /// Comma-separated list of numbers.
    pub fn f64_list(&self, key: &str, default: &[f64]) -> CliResult<Vec<f64>> {
        match self.doc.get(key) {
            None => {
                self.record(
                    key,
                    default
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    true,
                );
                Ok(default.to_vec())
            }
            Some(e) => {
                let parsed: Result<Vec<f64>, _> =
                    e.value.split(',').map(|t| t.trim().parse::<f64>()).collect();
                let v = parsed.map_err(|_| {
                    CliError::config_at(
                        e.line,
                        format!("{key}: expected comma-separated numbers, got '{}'", e.value),
                    )
                })?;
                if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
                    return Err(CliError::config_at(e.line, format!("{key}: invalid list")));
                }
                self.record(key, e.value.clone(), false);
                Ok(v)
            }
        }
    }

    pub fn particle_entries(&self) -> Vec<&Entry> {
        self.doc.get_all("particle")
    }

    pub fn unit_mode(&self, default: UnitMode) -> CliResult<UnitMode> {
        match self.doc.get("unit_mode") {
            None => {
                let name = match default {
                    UnitMode::Natural => "natural",
                    UnitMode::Si => "si",
                };
                self.record("unit_mode", name.to_string(), true);
                Ok(default)
            }
            Some(e) => {
                let mode = match e.value.as_str() {
                    "natural" => UnitMode::Natural,
                    "si" => UnitMode::Si,
                    other => {
                        return Err(CliError::config_at(
                            e.line,
                            format!("unit_mode must be 'natural' or 'si', got '{other}'"),
                        ))
                    }
                };
                self.record("unit_mode", e.value.clone(), false);
                Ok(mode)
            }
        }
    }
}
