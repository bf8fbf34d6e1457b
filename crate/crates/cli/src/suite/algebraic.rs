//! Exact-core, Lie-structure and algebraic-homology checks, plus algebra loading.

use std::path::Path;

use bgg_core::exact::{elim, SparseMatrix};
use bgg_core::homology::{checks, fiber_hodge, hodge_split, ChainComplexData};
use bgg_core::io::{self, HomologyTable};
use bgg_core::lie::{self, build_lie_algebra, builtin_parabolic, BuiltinFamily, GradedAlgebra, RepExpr};
use bgg_core::Error;

use super::{offset, Outcome, Suite};
use crate::JobError;

pub const JACOBI: (&str, &str) = ("Jacobi identity", "lie/jacobi");
const RANK_NULLITY: (&str, &str) = ("dim kernel + rank = dim domain", "exact/rank-nullity");
const SUBSPACE_INVERSE: (&str, &str) = ("invert_on_subspace(A,S)∘A = identity on S", "exact/subspace-inverse");
const RATIONAL_CLOSURE: (&str, &str) = ("All arithmetic closed over rationals", "exact/rational-closure");
const WEIGHT_LOWERING: (&str, &str) = ("ρ(ξ) maps the weight-w subspace into weights < w", "lie/weight-lowering");
const LAYERS: (&str, &str) = ("[g_a, g_b] ⊆ g_{a+b}", "lie/grading");
const KILLING: (&str, &str) = ("Killing pairing restricted to m × m* is nondegenerate", "lie/killing");
const DELTA_SQ: (&str, &str) = ("δ² = 0", "homology/delta-squared");
const D_SQ: (&str, &str) = ("d² = 0", "homology/d-squared");
const CARTAN: (&str, &str) = ("Cartan's identity", "homology/cartan");
const P_EQUIV: (&str, &str) = ("p-equivariance of δ", "homology/p-equivariance");
const M_STAR: (&str, &str) = ("m* maps Z_k into B_k", "homology/m-star-trivial");
const DUALITY: (&str, &str) = ("dim H_k(m*,W) = dim H_{n−k}(m*,W*)", "homology/poincare-duality");
const HODGE_ID: (&str, &str) = ("ker d ∩ ker δ = ker □", "homology/hodge-identification");
const HODGE_SPLIT: (&str, &str) = ("Hodge split dims sum to dim C_k", "homology/hodge-split");
const EULER: (&str, &str) = ("Euler characteristic = 0", "homology/euler");
const ROUND_TRIP: (&str, &str) = ("Round-trip: export∘import = identity", "runner/round-trip");
const DETERMINISM: (&str, &str) = ("Determinism", "runner/determinism");

/// Every check of the homology scope, in report order.
pub const NAMES: &[(&str, &str)] = &[
    JACOBI,
    WEIGHT_LOWERING,
    LAYERS,
    KILLING,
    RANK_NULLITY,
    SUBSPACE_INVERSE,
    RATIONAL_CLOSURE,
    DELTA_SQ,
    D_SQ,
    CARTAN,
    P_EQUIV,
    M_STAR,
    DUALITY,
    HODGE_ID,
    HODGE_SPLIT,
    EULER,
    ROUND_TRIP,
    DETERMINISM,
];

/// Loads a builtin family by name, or else a structure-constant file.
pub fn load_algebra(spec: &str) -> Result<(String, GradedAlgebra), JobError> {
    match BuiltinFamily::parse(spec) {
        Ok(family) => {
            let ga = builtin_parabolic(&family).map_err(|e| JobError::Construction(format!("algebra {spec}: {e}")))?;
            Ok((family.name(), ga))
        }
        Err(parse_err) => {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(JobError::Config(format!("algebra '{spec}': {parse_err}, and no such file")));
            }
            let text = std::fs::read_to_string(path).map_err(|e| JobError::Io(format!("{spec}: {e}")))?;
            let table = io::read_structure_constants(&text).map_err(|e| JobError::Config(format!("{spec}: {e}")))?;
            let ga = table.build().map_err(|e| JobError::Construction(format!("{spec}: {e}")))?;
            let name = path.file_stem().map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned());
            Ok((name, ga))
        }
    }
}

/// A single negated bracket that breaks the Jacobi identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultInjection {
    /// The negated bracket, as `[a, b] → c`.
    pub flipped: String,
    /// The triple reported by the Jacobi check.
    pub triple: (String, String, String),
}

impl FaultInjection {
    /// Negates `[b_i, b_j]` on `b_k` together with `[b_j, b_i]`, for the first such constant that
    /// makes the Jacobi check fail.
    pub fn find(ga: &GradedAlgebra) -> Option<Self> {
        let alg = &ga.algebra;
        let basis = (**alg.basis()).clone();
        let constants = alg.structure_constants();
        for c in constants.iter().filter(|c| c.i < c.j) {
            let mut flipped = constants.clone();
            for f in flipped.iter_mut() {
                if f.k == c.k && ((f.i, f.j) == (c.i, c.j) || (f.i, f.j) == (c.j, c.i)) {
                    f.value = -f.value.clone();
                }
            }
            if let Err(Error::Jacobi(a, b, l)) = build_lie_algebra(basis.clone(), &flipped) {
                return Some(FaultInjection {
                    flipped: format!("[{}, {}] → {}", alg.label(c.i), alg.label(c.j), alg.label(c.k)),
                    triple: (a, b, l),
                });
            }
        }
        None
    }

    pub fn record(&self, suite: &mut Suite) {
        let reason = format!(
            "Jacobi identity violated for ({}, {}, {}) after negating {}",
            self.triple.0, self.triple.1, self.triple.2, self.flipped
        );
        suite.run(JACOBI.0, JACOBI.1, None, None, |_| Outcome::Fail(reason));
    }
}

fn needs_d(cx: &ChainComplexData) -> Option<Outcome> {
    (!cx.has_coboundary()).then(|| Outcome::from(Error::NeedsGModule))
}

/// The fiber matrices `δ_k`, `d_k`, `□_k` with names.
fn fiber_matrices(cx: &ChainComplexData) -> Vec<(String, &SparseMatrix)> {
    let mut out = Vec::new();
    for k in 1..=cx.n() {
        out.push((format!("δ_{k}"), cx.delta(k)));
    }
    if cx.has_coboundary() {
        for k in 0..cx.n() {
            out.push((format!("d_{k}"), cx.d(k).expect("g-module")));
        }
        for k in 0..=cx.n() {
            out.push((format!("□_{k}"), cx.quabla(k).expect("g-module")));
        }
    }
    out
}

fn delta_operator(cx: &ChainComplexData, k: usize) -> bgg_core::Result<bgg_core::exact::OperatorMatrix> {
    bgg_core::exact::OperatorMatrix::new(cx.space(k).clone(), cx.space(k - 1).clone(), cx.delta(k).clone())
}

impl Suite<'_> {
    fn with_cx(&mut self, (name, anchor): (&str, &str), f: impl FnOnce(&Suite, &ChainComplexData) -> Outcome) {
        self.run(name, anchor, None, None, |s| match s.cx() {
            Ok(cx) => f(s, cx),
            Err(o) => o,
        });
    }

    pub fn homology_scope(&mut self) {
        let ga = self.inst.ga.clone();
        self.run(JACOBI.0, JACOBI.1, None, None, |_| lie::checks::jacobi(&ga).into());
        let rep = self.inst.rep.clone();
        self.run(WEIGHT_LOWERING.0, WEIGHT_LOWERING.1, None, None, |_| {
            lie::checks::representation_lowers_weight(&rep, &ga).into()
        });
        self.run(LAYERS.0, LAYERS.1, None, None, |_| lie::checks::layers_bracket(&ga).into());
        self.run(KILLING.0, KILLING.1, None, None, |_| lie::checks::killing_nondegenerate(&ga).into());

        self.with_cx(RANK_NULLITY, |_, cx| {
            let mats = fiber_matrices(cx);
            for (name, m) in &mats {
                let (ker, rank) = (elim::kernel(m).len(), elim::rank(m));
                if ker + rank != m.ncols() {
                    return Outcome::Fail(format!("{name}: {ker} + {rank} ≠ {}", m.ncols()));
                }
            }
            Outcome::detail(format!("{} fiber matrices", mats.len()))
        });
        self.with_cx(SUBSPACE_INVERSE, |_, cx| {
            if let Some(o) = needs_d(cx) {
                return o;
            }
            for k in 0..=cx.n() {
                let h = match fiber_hodge(cx, k) {
                    Ok(h) => h,
                    Err(e) => return e.into(),
                };
                let q = cx.quabla(k).expect("g-module");
                for v in h.im_b.iter().chain(&h.im_a) {
                    if &h.green().apply(&q.apply(v)) != v {
                        return Outcome::Fail(format!("□⁻¹∘□ moves a vector of im d ⊕ im δ in degree {k}"));
                    }
                }
            }
            Outcome::detail("□ on im d ⊕ im δ in every degree")
        });
        self.with_cx(RATIONAL_CLOSURE, |_, cx| {
            for k in 1..=cx.n() {
                let op = match delta_operator(cx, k) {
                    Ok(op) => op,
                    Err(e) => return e.into(),
                };
                match io::read_matrix(&io::write_matrix(&op)) {
                    Ok(back) if back == op => {}
                    Ok(_) => return Outcome::Fail(format!("δ_{k} entries changed through num/den text")),
                    Err(e) => return e.into(),
                }
            }
            Outcome::detail("δ_k entries reproduced exactly from num/den text")
        });

        self.with_cx(DELTA_SQ, |_, cx| checks::delta_squared_zero(cx).into());
        self.with_cx(D_SQ, |_, cx| needs_d(cx).unwrap_or_else(|| checks::d_squared_zero(cx).into()));
        self.with_cx(CARTAN, |_, cx| checks::cartan_identity(cx).into());
        self.with_cx(P_EQUIV, |_, cx| checks::p_equivariance(cx).into());
        self.with_cx(M_STAR, |_, cx| needs_d(cx).unwrap_or_else(|| checks::m_star_trivial_on_homology(cx).into()));
        self.with_cx(DUALITY, |s, cx| {
            let dual_expr = RepExpr::Dual(Box::new(s.inst.expr.clone()));
            let dual = lie::build_representation(&dual_expr, &s.inst.ga)
                .and_then(|r| ChainComplexData::new(s.inst.ga.clone(), std::sync::Arc::new(r)));
            match dual {
                Ok(d) => match checks::poincare_duality(cx, &d) {
                    Ok(()) => Outcome::detail(format!("dims {:?}", checks::homology_dims(cx))),
                    Err(e) => Outcome::Fail(e),
                },
                Err(e) => e.into(),
            }
        });
        self.with_cx(HODGE_ID, |_, cx| {
            if let Some(o) = needs_d(cx) {
                return o;
            }
            for k in 0..=cx.n() {
                if let Err(e) = fiber_hodge(cx, k).and_then(|h| bgg_core::homology::verify_harmonic_identification(cx, k, &h)) {
                    return e.into();
                }
            }
            Outcome::Pass(None)
        });
        self.with_cx(HODGE_SPLIT, |_, cx| {
            if let Some(o) = needs_d(cx) {
                return o;
            }
            let mut dims = Vec::new();
            for k in 0..=cx.n() {
                match hodge_split(cx, k) {
                    Ok(s) => {
                        let (a, h, b) = s.dims();
                        if a + h + b != cx.dim(k) {
                            return Outcome::Fail(format!("{a} + {h} + {b} ≠ dim C_{k} = {}", cx.dim(k)));
                        }
                        dims.push(format!("({a},{h},{b})"));
                    }
                    Err(e) => return e.into(),
                }
            }
            Outcome::detail(dims.join(" "))
        });
        self.with_cx(EULER, |_, cx| {
            let dims = checks::homology_dims(cx);
            match checks::euler_characteristic(&dims) {
                0 => Outcome::detail(format!("dims {dims:?}")),
                e => Outcome::Fail(format!("χ = {e} for dims {dims:?}")),
            }
        });
        self.homology_table();
        self.with_cx(DETERMINISM, |s, cx| {
            let replay = |seed| {
                let mut sm = bgg_core::bgg::SectionSampler::new(seed);
                (0..4).map(|_| sm.coefficient().to_string()).collect::<Vec<_>>()
            };
            let seed = s.seed(offset::REPLAY);
            if replay(seed) != replay(seed) {
                return Outcome::Fail("seeded sampler does not replay".into());
            }
            let fresh = ChainComplexData::new(s.inst.ga.clone(), s.inst.rep.clone());
            match (HomologyTable::compute(&s.inst.algebra_name, cx), fresh.and_then(|f| HomologyTable::compute(&s.inst.algebra_name, &f))) {
                (Ok(a), Ok(b)) if a.write() == b.write() => Outcome::detail("homology table rebuilt byte-identically; sampler replays"),
                (Ok(_), Ok(_)) => Outcome::Fail("homology table differs between two builds".into()),
                (Err(e), _) | (_, Err(e)) => e.into(),
            }
        });
    }

    /// Writes the homology table and checks that tables and matrices re-import losslessly.
    fn homology_table(&mut self) {
        let mut file = None;
        self.with_cx(ROUND_TRIP, |s, cx| {
            if let Some(o) = needs_d(cx) {
                return o;
            }
            let table = match HomologyTable::compute(&s.inst.algebra_name, cx) {
                Ok(t) => t,
                Err(e) => return e.into(),
            };
            let text = table.write();
            match HomologyTable::read(&text) {
                Ok(back) if back == table => {}
                Ok(_) => return Outcome::Fail("homology table changed under write/read".into()),
                Err(e) => return e.into(),
            }
            for k in 1..=cx.n() {
                let op = match delta_operator(cx, k) {
                    Ok(op) => op,
                    Err(e) => return e.into(),
                };
                if io::read_matrix(&io::write_matrix(&op)).ok().as_ref() != Some(&op) {
                    return Outcome::Fail(format!("δ_{k} changed under write/read"));
                }
            }
            file = Some(text);
            Outcome::detail("homology table and δ_k matrices")
        });
        if let Some(text) = file {
            self.files.push(("homology_table.txt".into(), text));
        }
    }
}
