//! Identity checks for one configured instance, collected into report records.

mod algebraic;
mod engine;

use std::cell::OnceCell;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bgg_core::bgg::{BggContext, PairingData};
use bgg_core::homology::checks::CheckResult;
use bgg_core::homology::ChainComplexData;
use bgg_core::lie::{build_representation, GradedAlgebra, RepExpr, RepresentationData};
use bgg_core::Error;

use crate::config::{Command, JobConfig, Scope};
use crate::report::{CheckRecord, Status};
use crate::JobError;

pub use algebraic::{load_algebra, FaultInjection};

/// Result of one check before it becomes a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass(Option<String>),
    Fail(String),
    NotApplicable(String),
}

impl Outcome {
    fn detail(d: impl Into<String>) -> Self {
        Outcome::Pass(Some(d.into()))
    }
}

impl From<CheckResult> for Outcome {
    fn from(r: CheckResult) -> Self {
        match r {
            Ok(()) => Outcome::Pass(None),
            Err(e) => Outcome::Fail(e),
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAbelian => Outcome::NotApplicable("flat calculus needs an abelian nilradical m".into()),
            Error::NeedsGModule => Outcome::NotApplicable("W is only a p-module, so d and □ are undefined".into()),
            other => Outcome::Fail(other.to_string()),
        }
    }
}

/// Seed offsets, one per randomized check.
mod offset {
    pub const INDEPENDENCE: u64 = 1;
    pub const LEIBNIZ: u64 = 2;
    pub const ASSOCIATOR: u64 = 3;
    pub const AINF: u64 = 4;
    pub const ADJOINTNESS: u64 = 5;
    pub const PAIRING: u64 = 6;
    pub const DEFORM: u64 = 7;
    pub const DEFORM_CLOSED: u64 = 8;
    pub const REPLAY: u64 = 9;
}

/// The algebra and coefficient module of a job.
pub struct Instance {
    pub algebra_name: String,
    pub ga: Arc<GradedAlgebra>,
    pub expr: RepExpr,
    pub rep: Arc<RepresentationData>,
}

impl Instance {
    pub fn new(algebra_name: String, ga: GradedAlgebra, rep: &str) -> Result<Self, JobError> {
        let ga = Arc::new(ga);
        let expr = RepExpr::parse(rep).map_err(|e| JobError::Config(format!("rep '{rep}': {e}")))?;
        let r = build_representation(&expr, &ga).map_err(|e| JobError::Construction(format!("representation {expr}: {e}")))?;
        Ok(Instance { algebra_name, ga, expr, rep: Arc::new(r) })
    }
}

/// `W⊗W`, and `W⊗W⊗W` when its fiber is small enough, with the pairings between them.
pub struct Products {
    pub t2: BggContext,
    pub vv: PairingData,
    pub triple: Result<TripleData, String>,
}

pub struct TripleData {
    pub t3: BggContext,
    pub t2v: PairingData,
    pub vt2: PairingData,
}

/// `End(W)` with its composition.
pub struct EndData {
    pub ctx: BggContext,
    pub composition: PairingData,
}

pub struct Suite<'a> {
    pub cfg: &'a JobConfig,
    pub inst: &'a Instance,
    records: Vec<CheckRecord>,
    timings: Vec<(String, Duration)>,
    cx: OnceCell<Result<Arc<ChainComplexData>, Outcome>>,
    ctx: OnceCell<Result<BggContext, Outcome>>,
    products: OnceCell<Result<Products, Outcome>>,
    end: OnceCell<Result<EndData, Outcome>>,
    /// Extra files produced by the checks, `(name, contents)`.
    pub files: Vec<(String, String)>,
}

impl<'a> Suite<'a> {
    pub fn new(cfg: &'a JobConfig, inst: &'a Instance) -> Self {
        Suite {
            cfg,
            inst,
            records: Vec::new(),
            timings: Vec::new(),
            cx: OnceCell::new(),
            ctx: OnceCell::new(),
            products: OnceCell::new(),
            end: OnceCell::new(),
            files: Vec::new(),
        }
    }

    pub fn into_parts(self) -> (Vec<CheckRecord>, Vec<(String, Duration)>, Vec<(String, String)>) {
        (self.records, self.timings, self.files)
    }

    pub fn seed(&self, offset: u64) -> u64 {
        self.cfg.seed.wrapping_add(offset)
    }

    fn degree(&self) -> usize {
        self.cfg.degree
    }

    /// Runs one check and records it; `seed` marks randomized checks.
    fn run(&mut self, name: &str, anchor: &str, degree: Option<usize>, seed: Option<u64>, f: impl FnOnce(&Self) -> Outcome) {
        let start = Instant::now();
        let outcome = f(self);
        self.timings.push((name.to_string(), start.elapsed()));
        let (status, detail) = match outcome {
            Outcome::Pass(d) => (Status::Pass, d),
            Outcome::Fail(r) => (Status::Fail(r), None),
            Outcome::NotApplicable(r) => (Status::NotApplicable(r), None),
        };
        self.records.push(CheckRecord { name: name.into(), anchor: anchor.into(), status, detail, degree, seed });
    }

    /// Records a check that cannot run, without evaluating anything.
    pub fn skip(&mut self, name: &str, anchor: &str, reason: &str) {
        self.run(name, anchor, None, None, |_| Outcome::NotApplicable(reason.into()));
    }

    fn cx(&self) -> Result<&Arc<ChainComplexData>, Outcome> {
        self.cx
            .get_or_init(|| {
                ChainComplexData::new(self.inst.ga.clone(), self.inst.rep.clone()).map(Arc::new).map_err(Outcome::from)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn ctx(&self) -> Result<&BggContext, Outcome> {
        self.ctx
            .get_or_init(|| {
                if !self.inst.ga.grading.is_abelian() {
                    return Err(Outcome::from(Error::NotAbelian));
                }
                BggContext::new(self.inst.ga.clone(), self.inst.rep.clone(), self.degree()).map_err(Outcome::from)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn products(&self) -> Result<&Products, Outcome> {
        self.products
            .get_or_init(|| {
                let ctx = self.ctx()?;
                let ga = &self.inst.ga;
                let w = self.inst.rep.clone();
                let dim = w.dim();
                if dim * dim > self.cfg.max_fiber {
                    return Err(Outcome::NotApplicable(format!(
                        "dim W⊗W = {} exceeds max_fiber = {}",
                        dim * dim,
                        self.cfg.max_fiber
                    )));
                }
                let vv = PairingData::tensor(w.clone(), w.clone(), ga)?;
                let t2 = BggContext::new(ga.clone(), vv.target.clone(), ctx.max_degree())?;
                let triple = if dim * dim * dim > self.cfg.max_fiber {
                    Err(format!("dim W⊗W⊗W = {} exceeds max_fiber = {}", dim * dim * dim, self.cfg.max_fiber))
                } else {
                    let t2v = PairingData::tensor(vv.target.clone(), w.clone(), ga)?;
                    let vt2 = PairingData::reassociate(w, vv.target.clone(), t2v.target.clone(), ga)?;
                    let t3 = BggContext::new(ga.clone(), t2v.target.clone(), ctx.max_degree())?;
                    Ok(TripleData { t3, t2v, vt2 })
                };
                Ok(Products { t2, vv, triple })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn end(&self) -> Result<&EndData, Outcome> {
        self.end
            .get_or_init(|| {
                let ctx = self.ctx()?;
                let ga = &self.inst.ga;
                let dim = self.inst.rep.dim();
                if dim * dim > self.cfg.max_fiber {
                    return Err(Outcome::NotApplicable(format!(
                        "dim End(W) = {} exceeds max_fiber = {}",
                        dim * dim,
                        self.cfg.max_fiber
                    )));
                }
                let w = &self.inst.rep;
                let end = bgg_core::lie::tensor(w, &bgg_core::lie::dual(w, ga)?, ga)?;
                let end = Arc::new(end.with_name(format!("End({})", self.inst.expr)));
                let composition = PairingData::composition(end.clone(), dim, ga)?;
                let ctx = BggContext::new(ga.clone(), end, ctx.max_degree())?;
                Ok(EndData { ctx, composition })
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Runs the checks belonging to the configured command.
    pub fn run_command(&mut self) {
        match self.cfg.command {
            Command::Homology => self.homology_scope(),
            Command::Bgg => self.bgg_operators(),
            Command::Cup => self.cup_checks(),
            Command::Ainf => self.ainf_checks(),
            Command::Dual => self.dual_checks(),
            Command::Deform => self.deform_checks(),
            Command::Verify => {
                let scope = self.cfg.scope;
                if scope.includes(Scope::Homology) {
                    self.homology_scope();
                }
                if scope.includes(Scope::Flat) {
                    self.flat_scope();
                }
                if scope.includes(Scope::Bgg) {
                    self.bgg_scope();
                }
            }
        }
    }

    /// Every check of the configured scope, reported as not applicable for `reason`.
    pub fn skip_all(&mut self, reason: &str) {
        let scope = if self.cfg.command == Command::Verify { self.cfg.scope } else { Scope::All };
        let mut names: Vec<(&str, &str)> = Vec::new();
        if scope.includes(Scope::Homology) {
            names.extend(algebraic::NAMES.iter().filter(|(n, _)| *n != algebraic::JACOBI.0));
        }
        if scope.includes(Scope::Flat) {
            names.extend(engine::FLAT_NAMES);
        }
        if scope.includes(Scope::Bgg) {
            names.extend(engine::BGG_NAMES);
        }
        for (n, a) in names {
            self.skip(n, a, reason);
        }
    }

    pub fn flat_scope(&mut self) {
        self.flat_checks();
    }

    pub fn bgg_scope(&mut self) {
        self.neumann_checks();
        self.pi_checks();
        self.bgg_operators();
        self.cup_checks();
        self.ainf_checks();
        self.dual_checks();
        self.deform_in_verify();
    }
}
