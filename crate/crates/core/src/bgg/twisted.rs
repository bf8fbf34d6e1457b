use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exact::{elim, BasedSpace, Rational, SparseMatrix, SparseVec};
use crate::flat::{FlatModel, FlatOperator, MonomialBasis, PolySectionSpace};
use crate::homology::FiberHodge;

/// Direction in which the algebraic differential `a` moves the level index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `a = δ` lowers `k`; the differential `d^g` raises it.
    Down,
    /// `a = −δᵀ` raises `k`; the divergence `δ^η` lowers it.
    Up,
}

/// Fiber data of a twisted complex on levels `0..=n`.
///
/// `a[k]: F_k → F_{k+σ}` is the algebraic differential, and the differential operator is
/// `D_η = b[k] + Σ_i symbols[k][i] ∂_i : F_k → F_{k−σ}`.
#[derive(Clone, Debug)]
pub struct FiberComplex {
    pub direction: Direction,
    pub fibers: Vec<Arc<BasedSpace>>,
    pub a: Vec<Option<SparseMatrix>>,
    pub b: Vec<Option<SparseMatrix>>,
    pub symbols: Vec<Vec<SparseMatrix>>,
}

impl FiberComplex {
    fn step(&self, k: usize, toward_a: bool) -> Option<usize> {
        let up = (self.direction == Direction::Up) == toward_a;
        let n = self.fibers.len() - 1;
        if up {
            (k < n).then_some(k + 1)
        } else {
            k.checked_sub(1)
        }
    }

    /// Chain complex `C_k(W)` with `a = δ`, `D_η = d^g`.
    pub fn primal(model: &FlatModel) -> Result<Self> {
        let cx = model.chains();
        let n = cx.n();
        let mut fc = FiberComplex {
            direction: Direction::Down,
            fibers: (0..=n).map(|k| cx.space(k).clone()).collect(),
            a: Vec::new(),
            b: Vec::new(),
            symbols: Vec::new(),
        };
        for k in 0..=n {
            fc.a.push((k > 0).then(|| cx.delta(k).clone()));
            fc.b.push(if k < n { Some(cx.d(k)?.clone()) } else { None });
            fc.symbols.push(if k < n { (0..n).map(|i| cx.wedge_chain(k, i)).collect() } else { Vec::new() });
        }
        Ok(fc)
    }

    /// Dual fibers `C_k(W)*` with `a = −δᵀ` and `D_η = δ^η = −(d^g)*`.
    pub fn dual(model: &FlatModel) -> Result<Self> {
        let cx = model.chains();
        let n = cx.n();
        let neg = Rational::from_int(-1);
        let mut fc = FiberComplex {
            direction: Direction::Up,
            fibers: (0..=n).map(|k| Arc::new(dual_space(cx.space(k)))).collect(),
            a: Vec::new(),
            b: Vec::new(),
            symbols: Vec::new(),
        };
        for k in 0..=n {
            fc.a.push((k < n).then(|| cx.delta(k + 1).transpose().scale(&neg)));
            fc.b.push(if k > 0 { Some(cx.d(k - 1)?.transpose().scale(&neg)) } else { None });
            fc.symbols.push(if k > 0 { (0..n).map(|i| cx.wedge_chain(k - 1, i).transpose()).collect() } else { Vec::new() });
        }
        Ok(fc)
    }
}

/// Dual basis: labels `l*`, weights negated.
pub fn dual_space(s: &BasedSpace) -> BasedSpace {
    BasedSpace::new(
        s.labels().iter().map(|l| format!("{l}*")).collect(),
        s.weights().iter().map(|w| -w).collect(),
    )
    .expect("dual labels are distinct")
}

struct Level {
    space: Arc<PolySectionSpace>,
    harmonic_space: Arc<PolySectionSpace>,
    laplacian: SparseMatrix,
    hodge: FiberHodge,
    a: Option<FlatOperator>,
    d: Option<FlatOperator>,
    quabla: FlatOperator,
    /// `N = −G(□_η − □)`.
    neumann: FlatOperator,
    green: FlatOperator,
    embed_h: FlatOperator,
    project_h: FlatOperator,
    inverse: OnceLock<(FlatOperator, usize)>,
    q: OnceLock<Option<FlatOperator>>,
    pi: OnceLock<FlatOperator>,
    represent: OnceLock<FlatOperator>,
    project: OnceLock<FlatOperator>,
    bgg: OnceLock<Option<FlatOperator>>,
}

/// Twisted complex of polynomial sections on the flat model: first-order quabla, its
/// Neumann inverse, the homotopy `Q`, the projection `Π`, transfer maps and BGG operators.
///
/// Symbolic operators are built on demand and cached; the `apply_*` methods evaluate the
/// same operators on a single section without multiplying symbols out.
pub struct TwistedComplex {
    fc: FiberComplex,
    mono: Arc<MonomialBasis>,
    levels: Vec<Level>,
}

impl std::fmt::Debug for TwistedComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TwistedComplex")
            .field("direction", &self.fc.direction)
            .field("fibers", &self.fc.fibers.iter().map(|s| s.dim()).collect::<Vec<_>>())
            .field("max_degree", &self.mono.max_degree())
            .finish()
    }
}

fn weight_of(space: &BasedSpace, v: &SparseVec) -> Result<Rational> {
    let mut ws = v.entries().iter().map(|(i, _)| space.weight(*i));
    let first = ws.next().cloned().unwrap_or_default();
    if ws.any(|w| *w != first) {
        return Err(Error::Invariant("harmonic basis vector is not weight-homogeneous".into()));
    }
    Ok(first)
}

impl TwistedComplex {
    pub fn new(fc: FiberComplex, mono: Arc<MonomialBasis>) -> Result<Self> {
        let n = fc.fibers.len() - 1;
        let spaces: Vec<Arc<PolySectionSpace>> =
            fc.fibers.iter().map(|f| Arc::new(PolySectionSpace::new(mono.clone(), f.clone()))).collect();
        let mut levels = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let space = spaces[k].clone();
            let (ta, td) = (fc.step(k, true), fc.step(k, false));
            let dim = fc.fibers[k].dim();
            // L_k = a_{k−σ} b_k + b_{k+σ} a_k
            let mut lap = SparseMatrix::zeros(dim, dim);
            if let (Some(t), Some(b)) = (td, &fc.b[k]) {
                lap = lap.add(&fc.a[t].as_ref().expect("a pairs with b").mul(b));
            }
            if let (Some(t), Some(a)) = (ta, &fc.a[k]) {
                lap = lap.add(&fc.b[t].as_ref().expect("b pairs with a").mul(a));
            }
            let incoming_b = ta.and_then(|t| fc.b[t].as_ref());
            let incoming_a = td.and_then(|t| fc.a[t].as_ref());
            let hodge = FiberHodge::new(&lap, incoming_b, incoming_a)?;
            let mut labels = Vec::new();
            let mut weights = Vec::new();
            for (i, v) in hodge.harmonic.iter().enumerate() {
                labels.push(format!("H{k}.{i}"));
                weights.push(weight_of(&fc.fibers[k], v)?);
            }
            let hfiber = Arc::new(BasedSpace::new(labels, weights)?);
            let harmonic_space = Arc::new(PolySectionSpace::new(mono.clone(), hfiber));
            let a = match (ta, &fc.a[k]) {
                (Some(t), Some(m)) => Some(FlatOperator::lift(m, space.clone(), spaces[t].clone())?),
                _ => None,
            };
            let d = match (td, &fc.b[k]) {
                (Some(t), Some(m)) => {
                    let mut op = FlatOperator::lift(m, space.clone(), spaces[t].clone())?;
                    for (i, s) in fc.symbols[k].iter().enumerate() {
                        op = op.add(&FlatOperator::partial(s, i, space.clone(), spaces[t].clone())?)?;
                    }
                    Some(op)
                }
                _ => None,
            };
            let green = FlatOperator::lift(hodge.green(), space.clone(), space.clone())?;
            let embed_h = FlatOperator::lift(&hodge.embed_harmonic(), harmonic_space.clone(), space.clone())?;
            let project_h = FlatOperator::lift(&hodge.project_harmonic(), space.clone(), harmonic_space.clone())?;
            levels.push(Level {
                space,
                harmonic_space,
                laplacian: lap,
                hodge,
                a,
                d,
                quabla: FlatOperator::zero(spaces[k].clone(), spaces[k].clone()),
                neumann: FlatOperator::zero(spaces[k].clone(), spaces[k].clone()),
                green,
                embed_h,
                project_h,
                inverse: OnceLock::new(),
                q: OnceLock::new(),
                pi: OnceLock::new(),
                represent: OnceLock::new(),
                project: OnceLock::new(),
                bgg: OnceLock::new(),
            });
        }
        let mut tc = TwistedComplex { fc, mono, levels };
        for k in 0..=n {
            let mut quabla = FlatOperator::zero(tc.levels[k].space.clone(), tc.levels[k].space.clone());
            if let (Some(t), Some(d)) = (tc.d_target(k), &tc.levels[k].d) {
                quabla = quabla.add(&tc.levels[t].a.as_ref().expect("a pairs with d").compose(d)?)?;
            }
            if let (Some(t), Some(a)) = (tc.a_target(k), &tc.levels[k].a) {
                quabla = quabla.add(&tc.levels[t].d.as_ref().expect("d pairs with a").compose(a)?)?;
            }
            let lap = tc.lift_fiber_quabla(k)?;
            let first_order = quabla.sub(&lap)?;
            tc.levels[k].neumann = tc.levels[k].green.compose(&first_order)?.scale(&Rational::from_int(-1));
            tc.levels[k].quabla = quabla;
        }
        Ok(tc)
    }

    /// Primal BGG complex `C_k(W)`-sections with `δ` and `d^g`.
    pub fn primal(model: &FlatModel) -> Result<Self> {
        Self::new(FiberComplex::primal(model)?, model.monomials().clone())
    }

    /// Dual complex on `C_k(W)*`-sections with `−δᵀ` and `δ^η`.
    pub fn dual(model: &FlatModel) -> Result<Self> {
        Self::new(FiberComplex::dual(model)?, model.monomials().clone())
    }

    fn lift_fiber_quabla(&self, k: usize) -> Result<FlatOperator> {
        let s = self.levels[k].space.clone();
        FlatOperator::lift(&self.levels[k].laplacian, s.clone(), s)
    }

    pub fn direction(&self) -> Direction {
        self.fc.direction
    }

    pub fn fiber_complex(&self) -> &FiberComplex {
        &self.fc
    }

    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn max_degree(&self) -> usize {
        self.mono.max_degree()
    }

    pub fn monomials(&self) -> &Arc<MonomialBasis> {
        &self.mono
    }

    /// Level reached by `a` from level `k`.
    pub fn a_target(&self, k: usize) -> Option<usize> {
        self.fc.step(k, true)
    }

    /// Level reached by `D_η` from level `k`.
    pub fn d_target(&self, k: usize) -> Option<usize> {
        self.fc.step(k, false)
    }

    pub fn section_space(&self, k: usize) -> &Arc<PolySectionSpace> {
        &self.levels[k].space
    }

    pub fn harmonic_space(&self, k: usize) -> &Arc<PolySectionSpace> {
        &self.levels[k].harmonic_space
    }

    pub fn hodge(&self, k: usize) -> &FiberHodge {
        &self.levels[k].hodge
    }

    /// Lifted algebraic differential from level `k`.
    pub fn a(&self, k: usize) -> Option<&FlatOperator> {
        self.levels[k].a.as_ref()
    }

    /// `D_η` from level `k`.
    pub fn d(&self, k: usize) -> Option<&FlatOperator> {
        self.levels[k].d.as_ref()
    }

    /// First-order quabla `□_η = a D_η + D_η a` on level `k`.
    pub fn quabla_eta(&self, k: usize) -> &FlatOperator {
        &self.levels[k].quabla
    }

    /// Lifted fiber Laplacian `□` on level `k`.
    pub fn quabla(&self, k: usize) -> Result<FlatOperator> {
        self.lift_fiber_quabla(k)
    }

    pub fn neumann_operator(&self, k: usize) -> &FlatOperator {
        &self.levels[k].neumann
    }

    pub fn embed_harmonic(&self, k: usize) -> &FlatOperator {
        &self.levels[k].embed_h
    }

    pub fn project_harmonic(&self, k: usize) -> &FlatOperator {
        &self.levels[k].project_h
    }

    /// Inverse of `□_η` on sections of `im a` (the `B_k`-sections), `(Σ_j N^j) G`, with the
    /// nilpotency index of `N`. Fails if `N^{D+1} ≠ 0`.
    pub fn neumann_inverse(&self, k: usize) -> Result<&(FlatOperator, usize)> {
        if let Some(v) = self.levels[k].inverse.get() {
            return Ok(v);
        }
        let lvl = &self.levels[k];
        let mut power = lvl.green.clone();
        let mut sum = lvl.green.clone();
        let mut nil = FlatOperator::identity(lvl.space.clone());
        let mut index = 0;
        while !nil.is_zero() {
            index += 1;
            if index > self.max_degree() + 1 {
                return Err(Error::Invariant(format!("N on level {k} is not nilpotent within D+1 steps")));
            }
            nil = lvl.neumann.compose(&nil)?;
            power = lvl.neumann.compose(&power)?;
            sum = sum.add(&power)?;
        }
        Ok(self.levels[k].inverse.get_or_init(|| (sum, index)))
    }

    pub fn nilpotency_index(&self, k: usize) -> Result<usize> {
        Ok(self.neumann_inverse(k)?.1)
    }

    /// `Q_k = □_η^{-1} a_k`, mapping level `k` to the `a`-target level.
    pub fn q(&self, k: usize) -> Result<Option<&FlatOperator>> {
        if let Some(v) = self.levels[k].q.get() {
            return Ok(v.as_ref());
        }
        let q = match (self.a_target(k), &self.levels[k].a) {
            (Some(t), Some(a)) => Some(self.neumann_inverse(t)?.0.compose(a)?),
            _ => None,
        };
        Ok(self.levels[k].q.get_or_init(|| q).as_ref())
    }

    /// The same homotopy built by inverting `□_η` on `C_k/Z_k` and applying `a` afterwards.
    pub fn quotient_q(&self, k: usize) -> Result<Option<FlatOperator>> {
        let (Some(_), Some(a)) = (self.a_target(k), &self.levels[k].a) else { return Ok(None) };
        let lvl = &self.levels[k];
        let h = &lvl.hodge;
        let nb = h.im_b.len();
        let bfiber = Arc::new(BasedSpace::numbered("b", nb));
        let bspace = Arc::new(PolySectionSpace::new(self.mono.clone(), bfiber));
        let pb = FlatOperator::lift(&h.project_im_b(), lvl.space.clone(), bspace.clone())?;
        let eb = FlatOperator::lift(&h.embed_im_b(), bspace.clone(), lvl.space.clone())?;
        let inv_b = FlatOperator::lift(h.inverse_on_im_b(), bspace.clone(), bspace.clone())?;
        let first_order = lvl.quabla.sub(&self.lift_fiber_quabla(k)?)?;
        let n_op = inv_b.compose(&pb.compose(&first_order.compose(&eb)?)?)?.scale(&Rational::from_int(-1));
        let mut power = inv_b.clone();
        let mut sum = inv_b;
        for _ in 0..=self.max_degree() {
            power = n_op.compose(&power)?;
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power)?;
        }
        if !power.is_zero() {
            return Err(Error::Invariant(format!("quotient N on level {k} is not nilpotent")));
        }
        Ok(Some(a.compose(&eb.compose(&sum.compose(&pb)?)?)?))
    }

    /// `Π_k = id − D_η Q_k − Q D_η`.
    pub fn pi(&self, k: usize) -> Result<&FlatOperator> {
        if let Some(v) = self.levels[k].pi.get() {
            return Ok(v);
        }
        let mut pi = FlatOperator::identity(self.levels[k].space.clone());
        if let (Some(t), Some(q)) = (self.a_target(k), self.q(k)?) {
            let d = self.levels[t].d.as_ref().expect("d from the a-target level");
            pi = pi.sub(&d.compose(q)?)?;
        }
        if let (Some(t), Some(d)) = (self.d_target(k), &self.levels[k].d) {
            if let Some(q) = self.q(t)? {
                pi = pi.sub(&q.compose(d)?)?;
            }
        }
        Ok(self.levels[k].pi.get_or_init(|| pi))
    }

    /// `Π ∘ repr`: harmonic sections to canonical chain representatives.
    pub fn represent(&self, k: usize) -> Result<&FlatOperator> {
        if let Some(v) = self.levels[k].represent.get() {
            return Ok(v);
        }
        let r = self.pi(k)?.compose(&self.levels[k].embed_h)?;
        Ok(self.levels[k].represent.get_or_init(|| r))
    }

    /// `proj ∘ Π`: chain sections to harmonic sections.
    pub fn project(&self, k: usize) -> Result<&FlatOperator> {
        if let Some(v) = self.levels[k].project.get() {
            return Ok(v);
        }
        let p = self.levels[k].project_h.compose(self.pi(k)?)?;
        Ok(self.levels[k].project.get_or_init(|| p))
    }

    /// BGG operator `proj ∘ D_η ∘ Π ∘ repr` from level `k` to the `D_η`-target level.
    pub fn bgg(&self, k: usize) -> Result<Option<&FlatOperator>> {
        if let Some(v) = self.levels[k].bgg.get() {
            return Ok(v.as_ref());
        }
        let op = match (self.d_target(k), &self.levels[k].d) {
            (Some(t), Some(d)) => Some(self.levels[t].project_h.compose(&d.compose(self.represent(k)?)?)?),
            _ => None,
        };
        Ok(self.levels[k].bgg.get_or_init(|| op).as_ref())
    }

    /// The unsimplified composite `proj ∘ Π ∘ D_η ∘ Π ∘ repr`.
    pub fn bgg_full(&self, k: usize) -> Result<Option<FlatOperator>> {
        match (self.d_target(k), &self.levels[k].d) {
            (Some(t), Some(d)) => Ok(Some(self.project(t)?.compose(&d.compose(self.represent(k)?)?)?)),
            _ => Ok(None),
        }
    }

    // Evaluation on single sections.

    /// `□_η^{-1}` on a section of `im a` at level `k`.
    pub fn apply_neumann_inverse(&self, k: usize, v: &SparseVec) -> Result<SparseVec> {
        let lvl = &self.levels[k];
        let mut u = lvl.green.apply(v);
        let mut acc = u.clone();
        let mut steps = 0;
        while !u.is_zero() {
            steps += 1;
            if steps > self.max_degree() + 1 {
                return Err(Error::Invariant(format!("N on level {k} is not nilpotent within D+1 steps")));
            }
            u = lvl.neumann.apply(&u);
            acc = acc.add(&u);
        }
        Ok(acc)
    }

    /// `Q_k v`, or `None` when `a` leaves the complex.
    pub fn apply_q(&self, k: usize, v: &SparseVec) -> Result<Option<SparseVec>> {
        match (self.a_target(k), &self.levels[k].a) {
            (Some(t), Some(a)) => Ok(Some(self.apply_neumann_inverse(t, &a.apply(v))?)),
            _ => Ok(None),
        }
    }

    pub fn apply_pi(&self, k: usize, v: &SparseVec) -> Result<SparseVec> {
        if let Some(pi) = self.levels[k].pi.get() {
            return Ok(pi.apply(v));
        }
        let mut out = v.clone();
        if let (Some(t), Some(q)) = (self.a_target(k), self.apply_q(k, v)?) {
            out = out.sub(&self.levels[t].d.as_ref().expect("d from the a-target level").apply(&q));
        }
        if let (Some(t), Some(d)) = (self.d_target(k), &self.levels[k].d) {
            if let Some(q) = self.apply_q(t, &d.apply(v))? {
                out = out.sub(&q);
            }
        }
        Ok(out)
    }

    pub fn apply_represent(&self, k: usize, h: &SparseVec) -> Result<SparseVec> {
        self.apply_pi(k, &self.levels[k].embed_h.apply(h))
    }

    pub fn apply_project(&self, k: usize, v: &SparseVec) -> Result<SparseVec> {
        Ok(self.levels[k].project_h.apply(&self.apply_pi(k, v)?))
    }

    /// `D_k h`, or `None` at the end of the sequence.
    pub fn apply_bgg(&self, k: usize, h: &SparseVec) -> Result<Option<SparseVec>> {
        match (self.d_target(k), &self.levels[k].d) {
            (Some(t), Some(d)) => Ok(Some(self.levels[t].project_h.apply(&d.apply(&self.apply_represent(k, h)?)))),
            _ => Ok(None),
        }
    }

    /// Kernel of `D_k` on sections of degree `≤ d` for each `d ≤ D`; the last entry is the kernel basis at `D`.
    pub fn bgg_kernel(&self, k: usize) -> Result<(Vec<usize>, Vec<SparseVec>)> {
        let op = self.bgg(k)?.ok_or(Error::DegreeOutOfRange { k, max: self.n() })?;
        let mut dims = Vec::new();
        for d in 0..self.max_degree() {
            dims.push(elim::kernel(&op.restrict_degree(d).matrix()).len());
        }
        let basis = elim::kernel(&op.matrix());
        dims.push(basis.len());
        Ok((dims, basis))
    }
}

/// First degree from which a sequence stays constant.
pub fn stabilization_degree(dims: &[usize]) -> Option<usize> {
    let last = *dims.last()?;
    let mut d = dims.len() - 1;
    while d > 0 && dims[d - 1] == last {
        d -= 1;
    }
    Some(d)
}
