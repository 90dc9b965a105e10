//! The end-to-end report: named checks with certificates, the inputs the
//! pipeline takes on trust, and a verdict that only claims what passed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Holds after correcting an input that disagrees with the source data.
    DocumentedDeviation,
}

impl Status {
    pub fn is_ok(self) -> bool {
        self != Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DocumentedDeviation => "documented-deviation",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub summary: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deviations: Vec<String>,
    pub certificate: Value,
}

impl Check {
    pub fn new(name: &str, status: Status, summary: impl Into<String>, certificate: Value) -> Self {
        Self { name: name.to_string(), status, summary: summary.into(), deviations: Vec::new(), certificate }
    }

    pub fn passed(name: &str, ok: bool, summary: impl Into<String>, certificate: Value) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, summary, certificate)
    }

    /// Downgrades a pass to a documented deviation.
    pub fn deviation(mut self, note: impl Into<String>) -> Self {
        if self.status == Status::Pass {
            self.status = Status::DocumentedDeviation;
        }
        self.deviations.push(note.into());
        self
    }
}

/// A step of the argument that is taken from the source rather than computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub statement: String,
    pub used_for: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub complete: bool,
    pub statement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_length: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_trace: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corollary: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scope: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_check: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaperReport {
    pub conventions: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub assumptions: Vec<Assumption>,
    pub verdict: Verdict,
}

impl PaperReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.is_ok())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("report: {e}")))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let v = &self.verdict;
        let _ = writeln!(out, "# Report\n");
        let _ = writeln!(out, "## Verdict\n");
        let _ = writeln!(out, "**{}**\n", v.statement);
        if let Some(c) = &v.failing_check {
            let _ = writeln!(out, "- failing check: `{c}`");
        }
        if let Some(l) = &v.witness_length {
            let _ = writeln!(out, "- witness length: {l}");
        }
        if let Some(t) = &v.witness_trace {
            let _ = writeln!(out, "- witness trace: {t}");
        }
        if let Some(c) = &v.corollary {
            let _ = writeln!(out, "- {c}");
        }
        if let Some(s) = &v.scope {
            let _ = writeln!(out, "- scope: {s}");
        }
        let _ = writeln!(out, "\n## Checks\n");
        let _ = writeln!(out, "| # | check | status | summary |");
        let _ = writeln!(out, "|---|---|---|---|");
        for (i, c) in self.checks.iter().enumerate() {
            let _ = writeln!(out, "| {} | `{}` | {} | {} |", i + 1, c.name, c.status.as_str(), c.summary.replace('|', "\\|"));
        }
        let deviations: Vec<(&str, &String)> = self
            .checks
            .iter()
            .flat_map(|c| c.deviations.iter().map(move |d| (c.name.as_str(), d)))
            .collect();
        if !deviations.is_empty() {
            let _ = writeln!(out, "\n## Deviations\n");
            for (name, d) in deviations {
                let _ = writeln!(out, "- `{name}`: {d}");
            }
        }
        let _ = writeln!(out, "\n## Inputs not computed\n");
        for a in &self.assumptions {
            let _ = writeln!(out, "- {} ({})", a.statement, a.used_for);
        }
        let _ = writeln!(out, "\n## Conventions\n");
        for (k, v) in &self.conventions {
            let _ = writeln!(out, "- {k}: {v}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "\n### {}\n", c.name);
            let _ = writeln!(out, "```json");
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&c.certificate).expect("value serializes"));
            let _ = writeln!(out, "```");
        }
        out
    }
}
