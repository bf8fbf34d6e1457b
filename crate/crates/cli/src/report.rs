//! Report documents and their canonical text and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::JobConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail(String),
    NotApplicable(String),
}

impl Status {
    pub fn tag(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail(_) => "FAIL",
            Status::NotApplicable(_) => "N/A",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    /// The identity, named as in the invariant lists.
    pub name: String,
    /// Stable topic id, e.g. `pi-calculus/idempotent`.
    pub anchor: String,
    #[serde(flatten)]
    pub status: Status,
    /// Extra facts for passing checks (dimensions, orders, decisions).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Polynomial degree cutoff the identity was tested at.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    /// Sampler seed for randomized checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub name: String,
    pub bytes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub job: JobConfig,
    pub checks: Vec<CheckRecord>,
    pub artifacts: Vec<Artifact>,
}

impl Report {
    pub fn new(job: JobConfig) -> Self {
        Report { job, checks: Vec::new(), artifacts: Vec::new() }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| matches!(c.status, Status::Fail(_)))
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    /// `(pass, fail, not applicable)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        self.checks.iter().fold((0, 0, 0), |(p, f, n), c| match c.status {
            Status::Pass => (p + 1, f, n),
            Status::Fail(_) => (p, f + 1, n),
            Status::NotApplicable(_) => (p, f, n + 1),
        })
    }

    pub fn find(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Line-oriented report; each check is `TAG  name  [anchor]  D=…  seed=…  message`, tab-separated, `-` when absent.
    pub fn to_text(&self) -> String {
        let j = &self.job;
        let mut s = String::from("bgg-report 1\n");
        writeln!(
            s,
            "job command={} algebra={} rep={} degree={} seed={} scope={} samples={} deform_samples={} max_fiber={} inject_fault={}",
            enum_name(&j.command),
            j.algebra,
            j.rep,
            j.degree,
            j.seed,
            enum_name(&j.scope),
            j.samples,
            j.deform_samples,
            j.max_fiber,
            j.inject_fault
        )
        .unwrap();
        for c in &self.checks {
            let degree = c.degree.map_or("-".to_string(), |d| format!("D={d}"));
            let seed = c.seed.map_or("-".to_string(), |x| format!("seed={x}"));
            let message = match &c.status {
                Status::Pass => c.detail.as_deref().unwrap_or("-"),
                Status::Fail(r) | Status::NotApplicable(r) => r,
            };
            writeln!(s, "{}\t{}\t[{}]\t{degree}\t{seed}\t{message}", c.status.tag(), c.name, c.anchor).unwrap();
        }
        let (p, f, n) = self.counts();
        writeln!(s, "summary pass={p} fail={f} not_applicable={n}").unwrap();
        for a in &self.artifacts {
            writeln!(s, "artifact {} {}", a.name, a.bytes).unwrap();
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn enum_name<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
}
