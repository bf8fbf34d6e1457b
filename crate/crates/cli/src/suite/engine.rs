//! Flat-model and BGG-engine checks.

use std::fmt::Write as _;

use bgg_core::bgg::{
    checks, deformation_obstruction, gauge_obstruction, lambda_expansion, stabilization_degree, AInfinity, BggContext,
    CapProduct, Graded, PairingData, Product, SectionSampler, Triple,
};
use bgg_core::exact::{elim, SparseVec};
use bgg_core::flat::{self, FlatModel};
use bgg_core::io;
use bgg_core::lie::RepExpr;
use bgg_core::Error;

use super::{offset, Outcome, Suite};

type Name = (&'static str, &'static str);

const TWISTED_DE_RHAM: Name = ("(d^g)² = 0", "flat/twisted-de-rham");
const LIFTED_DELTA: Name = ("Lifted δ satisfies δ² = 0", "flat/lifted-delta");
const LIFTED_CARTAN: Name = ("lifted Cartan identity", "flat/lifted-cartan");
const FILTRATION: Name = ("Degree filtration", "flat/degree-filtration");

pub const FLAT_NAMES: &[Name] = &[TWISTED_DE_RHAM, LIFTED_DELTA, LIFTED_CARTAN, FILTRATION];

const NILPOTENCY: Name = ("Neumann nilpotency index ≤ D + 1", "neumann/nilpotency");
const COMMUTES: Name = ("δ∘□_η = □_η∘δ", "neumann/commutes");
const TWO_SIDED: Name = ("□_η∘□_η⁻¹ = id on B_k-sections", "neumann/inverse");
const Q_AGREE: Name = ("Q built via B_k equals Q built via C_k/Z_k", "neumann/q-constructions");
const PI_NAMES: [Name; 6] = [
    ("Π∘δ = 0", "pi-calculus/kills-image"),
    ("δ∘Π = 0", "pi-calculus/lands-in-kernel"),
    ("on ker δ, project(Π(z)) = project(z)", "pi-calculus/identity-on-homology"),
    ("Π² = Π", "pi-calculus/idempotent"),
    ("d^g∘Π = Π∘d^g", "pi-calculus/commutes-with-d"),
    ("Π∘□_η = 0 and □_η∘Π = 0", "pi-calculus/kills-quabla"),
];
const TRANSFER: Name = ("project∘Π∘represent = id", "pi-calculus/transfer");
const INDEPENDENCE: Name = ("Π independent of the representative", "pi-calculus/representative");
const SIMPLIFICATION: Name = ("D = project∘Π∘d^g∘Π∘represent", "bgg/simplification");
const COMPOSITION: Name = ("D_{k+1}∘D_k = 0", "bgg/composition");
const KERNEL: Name = ("dim ker D₀ stabilizes at dim W", "bgg/twistor-kernel");
const DE_RHAM: Name = ("trivial W: D_k is the exterior derivative", "bgg/de-rham");
const OPERATOR_EXPORT: Name = ("Round-trip: export∘import = identity", "runner/round-trip-operators");
const LEIBNIZ: Name = ("Leibniz rule residual = 0 for cup", "cup/leibniz");
const TWISTOR: Name = ("cup on ker D₀ is the pointwise pairing", "cup/twistor-extension");
const ASSOCIATOR: Name = ("associator identity residual = 0 for triple product", "cup/associator");
const AINF: Name = ("A∞ relations for m = 1,2,3 residual = 0", "ainf/relations");
const LAMBDA: Name = ("λ_m term counts", "ainf/lambda-counts");
const DUAL_PI: Name = ("Π̂ = (Π)*", "dual/pi-adjoint");
const DUAL_D: Name = ("δ^η = −(d^g)*", "dual/differential");
const ADJOINTNESS: Name = ("divergence adjointness identity residual = 0", "dual/divergence");
const DUALITY_PAIRING: Name = ("cap at ℓ = 0 equals the fiber duality pairing", "dual/pairing");
const GAUGE: Name = ("D₁A = 0 and D₂(A⊔A) = 0 for A = D₀f", "deform/gauge");
const REPRODUCIBLE: Name = ("obstruction exactness decision reproducible", "deform/reproducible");
const CLOSED_CLASS: Name = ("obstruction decided for a random closed A", "deform/closed-class");

pub const BGG_NAMES: &[Name] = &[
    NILPOTENCY,
    COMMUTES,
    TWO_SIDED,
    Q_AGREE,
    PI_NAMES[0],
    PI_NAMES[1],
    PI_NAMES[2],
    PI_NAMES[3],
    PI_NAMES[4],
    PI_NAMES[5],
    TRANSFER,
    INDEPENDENCE,
    SIMPLIFICATION,
    COMPOSITION,
    KERNEL,
    DE_RHAM,
    OPERATOR_EXPORT,
    LEIBNIZ,
    TWISTOR,
    ASSOCIATOR,
    AINF,
    LAMBDA,
    DUAL_PI,
    DUAL_D,
    ADJOINTNESS,
    DUALITY_PAIRING,
    GAUGE,
    REPRODUCIBLE,
    CLOSED_CLASS,
];

const LEIBNIZ_BIDEGREES: [(usize, usize); 3] = [(0, 0), (0, 1), (1, 1)];
const ASSOCIATOR_DEGREES: [(usize, usize, usize); 6] = [(0, 0, 0), (0, 1, 0), (1, 0, 1), (0, 0, 1), (1, 1, 0), (1, 1, 1)];
const AINF_DEGREES: [&[usize]; 10] =
    [&[0], &[1], &[0, 0], &[0, 1], &[1, 0], &[1, 1], &[0, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 0, 1]];

fn or_outcome<T>(r: bgg_core::Result<T>) -> Result<T, Outcome> {
    r.map_err(Outcome::from)
}

/// Kernel of `D₀` among sections of polynomial degree `≤ d`, embedded in the full cutoff.
fn low_kernel(c: &BggContext, d: usize) -> bgg_core::Result<Vec<SparseVec>> {
    let op = c.primal().bgg(0)?.ok_or(Error::DegreeOutOfRange { k: 1, max: c.n() })?.restrict_degree(d);
    let dim = c.homology_sections(0).dim();
    Ok(elim::kernel(&op.matrix()).into_iter().map(|v| SparseVec::from_pairs(dim, v.into_entries())).collect())
}

impl Suite<'_> {
    /// Runs `f` against the BGG context; construction failures become the check outcome.
    fn with_ctx(&mut self, (name, anchor): Name, seed: Option<u64>, f: impl FnOnce(&Suite, &BggContext) -> Result<Outcome, Outcome>) {
        let degree = Some(self.degree());
        self.run(name, anchor, degree, seed, |s| match s.ctx() {
            Ok(ctx) => f(s, ctx).unwrap_or_else(|o| o),
            Err(o) => o,
        });
    }

    fn samples_per_pattern(&self) -> usize {
        self.cfg.samples.div_ceil(4).max(1)
    }

    pub fn flat_checks(&mut self) {
        let model = match (self.inst.ga.grading.is_abelian(), self.cx()) {
            (false, _) => Err(Outcome::from(Error::NotAbelian)),
            (true, Ok(cx)) => FlatModel::new(cx.clone(), self.degree()).map_err(Outcome::from),
            (true, Err(o)) => Err(o),
        };
        let needs_d = self.cx().map(|cx| cx.has_coboundary()).unwrap_or(false);
        type Check = fn(&FlatModel) -> bgg_core::homology::checks::CheckResult;
        let list: [(Name, Check, bool); 4] = [
            (TWISTED_DE_RHAM, flat::checks::twisted_de_rham_squared_zero, true),
            (LIFTED_DELTA, flat::checks::lifted_delta_squared_zero, false),
            (LIFTED_CARTAN, flat::checks::lifted_cartan_identity, false),
            (FILTRATION, flat::checks::degree_filtration, true),
        ];
        for ((name, anchor), check, uses_d) in list {
            let degree = Some(self.degree());
            self.run(name, anchor, degree, None, |_| match &model {
                Err(o) => o.clone(),
                Ok(_) if uses_d && !needs_d => Outcome::from(Error::NeedsGModule),
                Ok(m) => check(m).into(),
            });
        }
    }

    pub fn neumann_checks(&mut self) {
        self.with_ctx(NILPOTENCY, None, |_, ctx| {
            let bound = ctx.max_degree() + 1;
            Ok(match checks::max_nilpotency_index(ctx.primal()) {
                Ok(j) if j <= bound => Outcome::detail(format!("max index {j}")),
                Ok(j) => Outcome::Fail(format!("index {j} exceeds {bound}")),
                Err(e) => Outcome::Fail(e),
            })
        });
        self.with_ctx(COMMUTES, None, |_, ctx| Ok(checks::quabla_eta_commutes_with_a(ctx.primal()).into()));
        self.with_ctx(TWO_SIDED, None, |_, ctx| Ok(checks::neumann_inverse_two_sided(ctx.primal()).into()));
        self.with_ctx(Q_AGREE, None, |_, ctx| Ok(checks::q_constructions_agree(ctx.primal()).into()));
    }

    pub fn pi_checks(&mut self) {
        let results = match self.ctx() {
            Ok(ctx) => Ok(checks::pi_calculus(ctx.primal())),
            Err(o) => Err(o),
        };
        for (i, name) in PI_NAMES.iter().enumerate() {
            let outcome = match &results {
                Ok(rs) => rs[i].1.clone().into(),
                Err(o) => o.clone(),
            };
            let degree = Some(self.degree());
            self.run(name.0, name.1, degree, None, |_| outcome);
        }
        self.with_ctx(TRANSFER, None, |_, ctx| Ok(checks::transfer_maps(ctx.primal()).into()));
        let seed = self.seed(offset::INDEPENDENCE);
        self.with_ctx(INDEPENDENCE, Some(seed), |_, ctx| {
            let mut s = SectionSampler::new(seed);
            Ok(checks::representative_independence(ctx.primal(), &mut s, 2).into())
        });
    }

    /// Operator checks and exports shared by the `bgg` command and the verify suite.
    pub fn bgg_operators(&mut self) {
        self.with_ctx(SIMPLIFICATION, None, |_, ctx| Ok(checks::bgg_simplification(ctx.primal()).into()));
        self.with_ctx(COMPOSITION, None, |_, ctx| {
            if let Err(e) = checks::bgg_squared_zero(ctx.primal()) {
                return Ok(Outcome::Fail(e));
            }
            let mut orders = Vec::new();
            for k in 0..ctx.n() {
                let d = or_outcome(ctx.primal().bgg(k))?.expect("D_k below the top degree");
                orders.push(d.order().map_or("0".to_string(), |o| o.to_string()));
            }
            Ok(Outcome::detail(format!("orders of D_0..D_{}: {}", ctx.n().saturating_sub(1), orders.join(","))))
        });
        self.with_ctx(KERNEL, None, |_, ctx| {
            let (dims, _) = or_outcome(ctx.primal().bgg_kernel(0))?;
            let want = ctx.rep().dim();
            let last = *dims.last().expect("degree 0 is always present");
            let detail = format!("kernel dims by degree {dims:?}, stabilization degree {}", stabilization_degree(&dims).map_or("none".into(), |s| s.to_string()));
            Ok(if last == want {
                Outcome::detail(detail)
            } else if last < want && dims.windows(2).last().is_none_or(|w| w[0] < w[1]) {
                Outcome::NotApplicable(format!("cutoff too small to reach dim W = {want}: {detail}"))
            } else {
                Outcome::Fail(format!("dim ker D₀ = {last} but dim W = {want}: {detail}"))
            })
        });
        let trivial = self.inst.expr == RepExpr::Trivial;
        self.with_ctx(DE_RHAM, None, |_, ctx| {
            Ok(if trivial {
                checks::trivial_coefficients(ctx).into()
            } else {
                Outcome::NotApplicable("W is not trivial".into())
            })
        });
        let mut files = Vec::new();
        self.with_ctx(OPERATOR_EXPORT, None, |_, ctx| {
            let mut kernel = String::from("k degree dim_ker\n");
            let (dims, _) = or_outcome(ctx.primal().bgg_kernel(0))?;
            for (d, dim) in dims.iter().enumerate() {
                writeln!(kernel, "0 {d} {dim}").unwrap();
            }
            for k in 0..ctx.n() {
                let op = or_outcome(ctx.primal().bgg(k))?.expect("D_k below the top degree").operator_matrix();
                let text = io::write_matrix(&op);
                match io::read_matrix(&text) {
                    Ok(back) if back == op => {}
                    Ok(_) => return Ok(Outcome::Fail(format!("D_{k} changed under write/read"))),
                    Err(e) => return Ok(e.into()),
                }
                files.push((format!("D{k}.txt"), text));
            }
            files.push(("kernel_D0.txt".into(), kernel));
            Ok(Outcome::detail(format!("D_0..D_{} matrices", ctx.n().saturating_sub(1))))
        });
        self.files.extend(files);
    }

    pub fn cup_checks(&mut self) {
        let seed = self.seed(offset::LEIBNIZ);
        let samples = self.cfg.samples;
        self.with_ctx(LEIBNIZ, Some(seed), |s, ctx| {
            let p = s.products()?;
            let prod = or_outcome(Product::new(&p.vv, ctx, ctx, &p.t2))?;
            let mut sm = SectionSampler::new(seed);
            let (da, db) = (ctx.max_degree() / 2, ctx.max_degree() - ctx.max_degree() / 2);
            let (mut tested, mut nonzero, mut used) = (0, 0, Vec::new());
            for (k, l) in LEIBNIZ_BIDEGREES {
                if k.max(l) > ctx.n() {
                    continue;
                }
                let mut any = false;
                for _ in 0..samples {
                    let a = sm.section(ctx.homology_sections(k), da);
                    let b = sm.section(ctx.homology_sections(l), db);
                    let Some(r) = or_outcome(prod.leibniz_residual(k, &a, l, &b))? else { continue };
                    if !r.is_zero() {
                        return Ok(Outcome::Fail(format!("residual with {} nonzero coefficients at ({k},{l})", r.nnz())));
                    }
                    any = true;
                    tested += 1;
                    nonzero += usize::from(!or_outcome(prod.cup(k, &a, l, &b))?.is_zero());
                }
                if any {
                    used.push(format!("({k},{l})"));
                }
            }
            if tested == 0 {
                return Ok(Outcome::NotApplicable("no bidegree has D on the product".into()));
            }
            Ok(Outcome::detail(format!("{tested} pairs over {}, {nonzero} nonzero cups", used.join(","))))
        });
        self.with_ctx(TWISTOR, None, |s, ctx| {
            let p = s.products()?;
            let prod = or_outcome(Product::new(&p.vv, ctx, ctx, &p.t2))?;
            let d = ctx.max_degree();
            let ka = or_outcome(low_kernel(ctx, d / 2))?;
            let kb = or_outcome(low_kernel(ctx, d - d / 2))?;
            for a in &ka {
                for b in &kb {
                    let c = or_outcome(prod.cup(0, a, 0, b))?;
                    if !or_outcome(p.t2.primal().apply_bgg(0, &c))?.is_none_or(|v| v.is_zero()) {
                        return Ok(Outcome::Fail("D₀(σ⊔τ) ≠ 0 for σ, τ ∈ ker D₀".into()));
                    }
                    let ra = or_outcome(ctx.primal().apply_represent(0, a))?;
                    let rb = or_outcome(ctx.primal().apply_represent(0, b))?;
                    let pointwise = or_outcome(prod.wedge_chains(0, &ra, 0, &rb))?;
                    if or_outcome(p.t2.primal().apply_represent(0, &c))? != pointwise {
                        return Ok(Outcome::Fail("representative of σ⊔τ differs from the pointwise pairing".into()));
                    }
                }
            }
            Ok(Outcome::detail(format!("{}×{} kernel pairs", ka.len(), kb.len())))
        });
        let seed = self.seed(offset::ASSOCIATOR);
        let reps = self.samples_per_pattern();
        self.with_ctx(ASSOCIATOR, Some(seed), |s, ctx| {
            let p = s.products()?;
            let td = p.triple.as_ref().map_err(|r| Outcome::NotApplicable(r.clone()))?;
            let vv = or_outcome(Product::new(&p.vv, ctx, ctx, &p.t2))?;
            let t2v = or_outcome(Product::new(&td.t2v, &p.t2, ctx, &td.t3))?;
            let vt2 = or_outcome(Product::new(&td.vt2, ctx, &p.t2, &td.t3))?;
            let triple = or_outcome(Triple::new(vv, t2v, vv, vt2))?;
            let mut sm = SectionSampler::new(seed);
            let deg = ctx.max_degree() / 3;
            let mut tested = 0;
            for (k, l, m) in ASSOCIATOR_DEGREES {
                if k.max(l).max(m) > ctx.n() {
                    continue;
                }
                for _ in 0..reps {
                    let a = sm.section(ctx.homology_sections(k), deg);
                    let b = sm.section(ctx.homology_sections(l), deg);
                    let c = sm.section(ctx.homology_sections(m), deg);
                    let Some(r) = or_outcome(triple.associator_residual(k, &a, l, &b, m, &c))? else { continue };
                    if !r.is_zero() {
                        return Ok(Outcome::Fail(format!("residual with {} nonzero coefficients at ({k},{l},{m})", r.nnz())));
                    }
                    tested += 1;
                }
            }
            if tested == 0 {
                return Ok(Outcome::NotApplicable("no tridegree has D on the triple product".into()));
            }
            Ok(Outcome::detail(format!("{tested} triples")))
        });
    }

    pub fn ainf_checks(&mut self) {
        let seed = self.seed(offset::AINF);
        let reps = self.samples_per_pattern();
        self.with_ctx(AINF, Some(seed), |s, _| {
            let end = s.end()?;
            let mut failures = Vec::new();
            for shift in [0, 1] {
                let ai = or_outcome(AInfinity::new(&end.ctx, &end.composition, shift))?;
                match ainf_relations(&ai, &end.ctx, seed, reps) {
                    Ok(Ok(tested)) if shift == 0 => {
                        return Ok(Outcome::detail(format!("{tested} relations on End(W), grading shift 0")));
                    }
                    Ok(Ok(tested)) => {
                        return Ok(Outcome::detail(format!(
                            "{tested} relations on End(W), grading shift 1 ({})",
                            failures.join("; ")
                        )));
                    }
                    Ok(Err(msg)) => failures.push(format!("shift {shift}: {msg}")),
                    Err(e) => return Ok(e.into()),
                }
            }
            Ok(Outcome::Fail(failures.join("; ")))
        });
        let degree = Some(self.degree());
        self.run(LAMBDA.0, LAMBDA.1, degree, None, |_| {
            let counts: Vec<usize> = (2..=4).map(|m| lambda_expansion(m).len()).collect();
            if counts == [1, 2, 5] {
                Outcome::detail("(1,2,5) for m = (2,3,4), the (m−1)-st Catalan numbers")
            } else {
                Outcome::Fail(format!("counts {counts:?} for m = (2,3,4)"))
            }
        });
    }

    pub fn dual_checks(&mut self) {
        self.with_ctx(DUAL_PI, None, |_, ctx| Ok(checks::dual_pi_is_adjoint(ctx).into()));
        self.with_ctx(DUAL_D, None, |_, ctx| Ok(checks::d_adjoint_two_ways(ctx).into()));
        let seed = self.seed(offset::ADJOINTNESS);
        let samples = self.cfg.samples;
        self.with_ctx(ADJOINTNESS, Some(seed), |_, ctx| {
            if ctx.n() == 0 {
                return Ok(Outcome::NotApplicable("n = 0".into()));
            }
            let cap = or_outcome(CapProduct::new(ctx))?;
            let dual = or_outcome(ctx.dual())?;
            let mut sm = SectionSampler::new(seed);
            let (da, db) = (ctx.max_degree() / 2, ctx.max_degree() - ctx.max_degree() / 2);
            let mut nonzero = 0;
            for i in 0..samples {
                let k = i % ctx.n();
                let a = sm.section(ctx.homology_sections(k), da);
                let b = sm.section(dual.harmonic_space(k + 1), db);
                let r = or_outcome(cap.adjointness_residual(k, &a, &b))?;
                if !r.is_zero() {
                    return Ok(Outcome::Fail(format!("residual with {} nonzero coefficients at k = {k}", r.nnz())));
                }
                let div = or_outcome(cap.cap(k, &a, k + 1, &b).and_then(|x| cap.divergence(&x)))?;
                nonzero += usize::from(!div.is_zero());
            }
            Ok(Outcome::detail(format!("{samples} pairs, {nonzero} with nonzero divergence")))
        });
        let seed = self.seed(offset::PAIRING);
        self.with_ctx(DUALITY_PAIRING, Some(seed), |_, ctx| {
            let cap = or_outcome(CapProduct::new(ctx))?;
            let dual = or_outcome(ctx.dual())?;
            let mut sm = SectionSampler::new(seed);
            let (da, db) = (ctx.max_degree() / 2, ctx.max_degree() - ctx.max_degree() / 2);
            for _ in 0..samples {
                let a = sm.section(ctx.homology_sections(0), da);
                let b = sm.section(dual.harmonic_space(0), db);
                if or_outcome(cap.pairing(0, &a, &b))? != or_outcome(cap.fiber_pairing(0, &a, &b))? {
                    return Ok(Outcome::Fail("cap at ℓ = 0 differs from the fiber pairing".into()));
                }
            }
            Ok(Outcome::detail(format!("{samples} pairs")))
        });
    }

    /// Deformation checks inside the verify suite, which only apply to the adjoint module.
    pub fn deform_in_verify(&mut self) {
        if self.inst.expr == RepExpr::Adjoint {
            self.deform_checks();
        } else {
            for name in [GAUGE, REPRODUCIBLE, CLOSED_CLASS] {
                self.skip(name.0, name.1, "deformations need W = adjoint");
            }
        }
    }

    pub fn deform_checks(&mut self) {
        let seed = self.seed(offset::DEFORM);
        let count = self.cfg.deform_samples;
        let ga = self.inst.ga.clone();
        let mut first = None;
        self.with_ctx(GAUGE, Some(seed), |_, ctx| {
            let br = or_outcome(PairingData::bracket(ctx.rep().clone(), &ga))?;
            let rows = gauge_run(ctx, &br, seed, count)?;
            if let Some((i, _)) = rows.iter().enumerate().find(|(_, r)| !r.d1_zero || !r.closed) {
                return Ok(Outcome::Fail(format!("sample {i}: D₁A = 0 is {}, D₂(A⊔A) = 0 is {}", rows[i].d1_zero, rows[i].closed)));
            }
            let exact = rows.iter().filter(|r| r.exact).count();
            let nonzero = rows.iter().filter(|r| r.square_nnz > 0).count();
            first = Some(rows);
            Ok(Outcome::detail(format!("{count} samples, {nonzero} with A⊔A ≠ 0, {exact} with A⊔A exact within the cutoff")))
        });
        self.with_ctx(REPRODUCIBLE, Some(seed), |_, ctx| {
            let Some(rows) = &first else {
                return Ok(Outcome::NotApplicable("gauge run did not complete".into()));
            };
            let br = or_outcome(PairingData::bracket(ctx.rep().clone(), &ga))?;
            let again = gauge_run(ctx, &br, seed, count)?;
            Ok(if &again == rows {
                Outcome::detail("re-run with the same seed gives the same decisions")
            } else {
                Outcome::Fail("decisions differ between runs with the same seed".into())
            })
        });
        if let Some(rows) = &first {
            let mut text = String::from("sample closed exact square_nnz\n");
            for (i, r) in rows.iter().enumerate() {
                writeln!(text, "{i} {} {} {}", r.closed, r.exact, r.square_nnz).unwrap();
            }
            self.files.push(("deformations.txt".into(), text));
        }
        let seed = self.seed(offset::DEFORM_CLOSED);
        self.with_ctx(CLOSED_CLASS, Some(seed), |_, ctx| {
            let br = or_outcome(PairingData::bracket(ctx.rep().clone(), &ga))?;
            let half = ctx.max_degree() / 2;
            let d1 = or_outcome(ctx.primal().bgg(1))?.ok_or_else(|| Outcome::NotApplicable("n < 2".into()))?;
            let dim = ctx.homology_sections(1).dim();
            let kernel = elim::kernel(&d1.restrict_degree(half).matrix());
            let mut sm = SectionSampler::new(seed);
            let a = kernel.iter().fold(SparseVec::zero(dim), |acc, v| {
                acc.axpy(&sm.coefficient(), &SparseVec::from_pairs(dim, v.entries().to_vec()))
            });
            match deformation_obstruction(ctx, &br, &a) {
                Ok(r) if r.is_closed() => Ok(Outcome::detail(format!(
                    "dim ker D₁ in degree ≤ {half} is {}, A⊔A has {} nonzero coefficients, exact = {}",
                    kernel.len(),
                    r.square.nnz(),
                    r.is_exact()
                ))),
                Ok(_) => Ok(Outcome::Fail("D₂(A⊔A) ≠ 0".into())),
                Err(e) => Ok(e.into()),
            }
        });
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct GaugeRow {
    d1_zero: bool,
    closed: bool,
    exact: bool,
    square_nnz: usize,
}

fn gauge_run(ctx: &BggContext, br: &PairingData, seed: u64, count: usize) -> Result<Vec<GaugeRow>, Outcome> {
    let mut sm = SectionSampler::new(seed);
    let order = or_outcome(ctx.primal().bgg(0))?.and_then(|d| d.order()).unwrap_or(0);
    let deg = (ctx.max_degree() / 2 + order).min(ctx.max_degree());
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let f = sm.section(ctx.homology_sections(0), deg);
        let (a, rep) = or_outcome(gauge_obstruction(ctx, br, &f))?;
        let d1_zero = or_outcome(ctx.primal().apply_bgg(1, &a))?.is_none_or(|v| v.is_zero());
        rows.push(GaugeRow { d1_zero, closed: rep.is_closed(), exact: rep.is_exact(), square_nnz: rep.square.nnz() });
    }
    Ok(rows)
}

/// Checks the relations for every degree pattern; `Ok(Err(_))` names the first failure.
fn ainf_relations(ai: &AInfinity, ctx: &BggContext, seed: u64, reps: usize) -> bgg_core::Result<Result<usize, String>> {
    let mut sm = SectionSampler::new(seed);
    let mut tested = 0;
    for ds in AINF_DEGREES {
        if ds.iter().any(|&k| k > ctx.n()) {
            continue;
        }
        let deg = ctx.max_degree() / ds.len();
        for _ in 0..reps {
            let args: Vec<Graded> = ds.iter().map(|&k| (k, sm.section(ctx.homology_sections(k), deg))).collect();
            match ai.relation_residual(&args)? {
                Some(r) if !r.is_zero() => {
                    return Ok(Err(format!("relation for degrees {ds:?} has {} nonzero coefficients", r.nnz())))
                }
                Some(_) => tested += 1,
                None => {}
            }
        }
    }
    Ok(Ok(tested))
}
