use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use bgg_cli::{run_job, Command, Format, JobConfig, JobError, Scope, Status};
use clap::Parser;

/// Exact BGG verification runner on flat parabolic models.
#[derive(Debug, Parser)]
#[command(name = "bgg", version)]
struct Cli {
    /// Job to run; taken from the config file when omitted.
    #[arg(value_enum)]
    command: Option<Command>,
    /// TOML job file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `conformal:p,q`, `projective:n`, `g2`, or a structure-constant file.
    #[arg(long)]
    algebra: Option<String>,
    /// Representation expression, e.g. `ext(standard,2)`.
    #[arg(long)]
    rep: Option<String>,
    /// Polynomial degree cutoff D.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory [default: $BGG_OUT_DIR, else ./bgg-out].
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Part of the verify suite to run.
    #[arg(long, value_enum)]
    scope: Option<Scope>,
    /// Random section tuples per bidegree.
    #[arg(long)]
    samples: Option<usize>,
    /// Gauge potentials for deform.
    #[arg(long)]
    deform_samples: Option<usize>,
    /// Largest fiber dimension for product checks.
    #[arg(long)]
    max_fiber: Option<usize>,
    /// Negate one bracket so that the Jacobi identity fails.
    #[arg(long)]
    inject_fault: bool,
    /// Also write per-check wall times to this file.
    #[arg(long)]
    timings: Option<PathBuf>,
    /// Do not print the report on stdout.
    #[arg(long, short)]
    quiet: bool,
}

impl Cli {
    fn job(&self) -> Result<JobConfig, JobError> {
        let mut cfg = match &self.config {
            Some(path) => JobConfig::load(path)?,
            None => {
                let algebra = self.algebra.clone().ok_or_else(|| JobError::Config("--algebra or --config is required".into()))?;
                let command = self.command.ok_or_else(|| JobError::Config("a command or --config is required".into()))?;
                JobConfig::new(algebra, "standard", 3, command)
            }
        };
        if let Some(c) = self.command {
            cfg.command = c;
        }
        if let Some(a) = &self.algebra {
            cfg.algebra = a.clone();
        }
        if let Some(r) = &self.rep {
            cfg.rep = r.clone();
        }
        if let Some(d) = self.degree {
            cfg.degree = d;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(s) = self.scope {
            cfg.scope = s;
        }
        if let Some(n) = self.samples {
            cfg.samples = n;
        }
        if let Some(n) = self.deform_samples {
            cfg.deform_samples = n;
        }
        if let Some(n) = self.max_fiber {
            cfg.max_fiber = n;
        }
        cfg.inject_fault |= self.inject_fault;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: &Cli) -> anyhow::Result<i32> {
    let cfg = cli.job()?;
    let out = run_job(&cfg)?;
    out.write(&cfg.out_dir())?;
    if let Some(path) = &cli.timings {
        std::fs::write(path, out.timings_text()).with_context(|| format!("writing timings to {}", path.display()))?;
    }
    if !cli.quiet {
        print!("{}", out.rendered_report());
    }
    for f in out.report.failures() {
        if let Status::Fail(reason) = &f.status {
            eprintln!("FAIL {}: {reason}", f.name);
        }
    }
    Ok(out.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.downcast_ref::<JobError>().map_or(2, |j| j.exit_code()) as u8)
        }
    }
}
