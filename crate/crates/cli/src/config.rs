//! Job configuration: a TOML file, command-line flags on top, defaults underneath.

use std::path::{Path, PathBuf};

use bgg_core::lie::RepExpr;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::JobError;

/// Environment variable consulted when neither the flags nor the config name an output directory.
pub const OUT_DIR_VAR: &str = "BGG_OUT_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Homology,
    Bgg,
    Cup,
    Ainf,
    Dual,
    Deform,
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Homology,
    Flat,
    Bgg,
    #[default]
    All,
}

impl Scope {
    pub fn includes(self, other: Scope) -> bool {
        self == Scope::All || self == other
    }
}

/// A fully resolved job.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// `conformal:p,q`, `projective:n`, `g2`, or a path to a structure-constant file.
    pub algebra: String,
    /// Representation expression, e.g. `tensor(standard,dual(standard))`.
    #[serde(default = "default_rep")]
    pub rep: String,
    /// Polynomial degree cutoff `D`.
    #[serde(default = "default_degree")]
    pub degree: usize,
    pub command: Command,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub scope: Scope,
    /// Random section pairs per bidegree for the sampled identities.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Gauge potentials `f` for the deformation command.
    #[serde(default = "default_deform_samples")]
    pub deform_samples: usize,
    /// Largest fiber dimension for which the `W⊗W⊗W` product checks are attempted.
    #[serde(default = "default_max_fiber")]
    pub max_fiber: usize,
    /// Flip the sign of one bracket so that the Jacobi identity fails.
    #[serde(default)]
    pub inject_fault: bool,
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
}

fn default_rep() -> String {
    "standard".into()
}

fn default_degree() -> usize {
    3
}

fn default_samples() -> usize {
    20
}

fn default_deform_samples() -> usize {
    10
}

fn default_max_fiber() -> usize {
    125
}

impl JobConfig {
    pub fn new(algebra: impl Into<String>, rep: impl Into<String>, degree: usize, command: Command) -> Self {
        JobConfig {
            algebra: algebra.into(),
            rep: rep.into(),
            degree,
            command,
            seed: 0,
            format: Format::Text,
            scope: Scope::All,
            samples: default_samples(),
            deform_samples: default_deform_samples(),
            max_fiber: default_max_fiber(),
            inject_fault: false,
            out: None,
        }
    }

    /// Parses a TOML job file; errors carry line and column.
    pub fn from_toml(text: &str) -> Result<Self, JobError> {
        let cfg: JobConfig = toml::from_str(text).map_err(|e| JobError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, JobError> {
        let text = std::fs::read_to_string(path).map_err(|e| JobError::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            JobError::Config(m) => JobError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn validate(&self) -> Result<(), JobError> {
        RepExpr::parse(&self.rep).map_err(|e| JobError::Config(format!("rep '{}': {e}", self.rep)))?;
        if self.algebra.trim().is_empty() {
            return Err(JobError::Config("algebra must not be empty".into()));
        }
        Ok(())
    }

    /// Output directory: explicit setting, then the environment, then `bgg-out`.
    pub fn out_dir(&self) -> PathBuf {
        self.out
            .clone()
            .or_else(|| std::env::var_os(OUT_DIR_VAR).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("bgg-out"))
    }
}
