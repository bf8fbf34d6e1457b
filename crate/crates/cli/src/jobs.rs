//! Running a job and writing its artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use bgg_core::lie::RepExpr;

use crate::config::{Command, Format, JobConfig};
use crate::report::{Artifact, Report};
use crate::suite::{load_algebra, FaultInjection, Instance, Suite};
use crate::JobError;

/// Everything a job produces; only `report` and `files` are canonical.
#[derive(Debug)]
pub struct JobOutput {
    pub report: Report,
    pub files: Vec<(String, String)>,
    pub timings: Vec<(String, Duration)>,
}

impl JobOutput {
    pub fn exit_code(&self) -> i32 {
        if self.report.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn rendered_report(&self) -> String {
        match self.report.job.format {
            Format::Text => self.report.to_text(),
            Format::Json => self.report.to_json(),
        }
    }

    pub fn report_file_name(&self) -> &'static str {
        match self.report.job.format {
            Format::Text => "report.txt",
            Format::Json => "report.json",
        }
    }

    /// Writes artifacts and the report into `dir`, returning the written paths.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>, JobError> {
        fs::create_dir_all(dir).map_err(|e| JobError::Io(format!("{}: {e}", dir.display())))?;
        let mut written = Vec::new();
        let report = self.rendered_report();
        for (name, text) in self.files.iter().map(|(n, t)| (n.as_str(), t.as_str())).chain([(self.report_file_name(), report.as_str())]) {
            let path = dir.join(name);
            fs::write(&path, text).map_err(|e| JobError::Io(format!("{}: {e}", path.display())))?;
            written.push(path);
        }
        Ok(written)
    }

    /// Per-check wall times, one `seconds<TAB>name` line each. Not part of the canonical output.
    pub fn timings_text(&self) -> String {
        self.timings.iter().map(|(n, d)| format!("{:.6}\t{n}\n", d.as_secs_f64())).collect()
    }
}

/// Builds the instance, runs the configured checks and assembles the report.
pub fn run_job(cfg: &JobConfig) -> Result<JobOutput, JobError> {
    cfg.validate()?;
    if cfg.command == Command::Deform && RepExpr::parse(&cfg.rep).ok() != Some(RepExpr::Adjoint) {
        return Err(JobError::Config(format!("deform needs rep = adjoint, got '{}'", cfg.rep)));
    }
    let (name, ga) = load_algebra(&cfg.algebra)?;
    let fault = if cfg.inject_fault {
        let f = FaultInjection::find(&ga)
            .ok_or_else(|| JobError::Construction("no single bracket sign flip breaks the Jacobi identity".into()))?;
        Some(f)
    } else {
        None
    };
    let inst = Instance::new(name, ga, &cfg.rep)?;
    let mut suite = Suite::new(cfg, &inst);
    match &fault {
        Some(f) => {
            f.record(&mut suite);
            suite.skip_all("algebra failed the Jacobi check after fault injection");
        }
        None => suite.run_command(),
    }
    let (checks, timings, files) = suite.into_parts();
    let mut report = Report::new(cfg.clone());
    report.checks = checks;
    report.artifacts = files.iter().map(|(n, t)| Artifact { name: n.clone(), bytes: t.len() }).collect();
    Ok(JobOutput { report, files, timings })
}
