//! Check records and run reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::config::ExperimentConfig;

/// One named pass/fail check with its measurements and thresholds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: BTreeMap<String, Value>,
    pub thresholds: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
            measured: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            note: None,
        }
    }

    /// A failing check carrying an error message.
    pub fn error(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Check::new(name, false).note(format!("error: {err}"))
    }

    pub fn measure(mut self, key: &str, v: impl Serialize) -> Self {
        self.measured.insert(key.into(), serde_json::to_value(v).unwrap_or(Value::Null));
        self
    }

    pub fn threshold(mut self, key: &str, v: impl Serialize) -> Self {
        self.thresholds.insert(key.into(), serde_json::to_value(v).unwrap_or(Value::Null));
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Everything a command produced, minus wall time (kept out so reports are
/// byte-identical across runs).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub config: ExperimentConfig,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
