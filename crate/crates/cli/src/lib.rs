//! Batch runner for the BGG machinery: job configs in, verification reports and exported
//! operators out.
//!
//! Exit-code contract of the `bgg` binary: 0 when every check passes or is not applicable,
//! 1 when some check fails, 2 for configuration, parse and construction errors.

pub mod config;
pub mod jobs;
pub mod report;
pub mod suite;

pub use config::{Command, Format, JobConfig, Scope};
pub use jobs::{run_job, JobOutput};
pub use report::{CheckRecord, Report, Status};

/// Errors that stop a job before any report exists.
#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}
