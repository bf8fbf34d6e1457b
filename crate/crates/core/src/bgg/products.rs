use std::collections::HashMap;

use super::{BggContext, PairingData};
use crate::error::{Error, Result};
use crate::exact::{DenseAccumulator, Rational, SparseVec};
use crate::flat::PolySectionSpace;
use crate::homology::FormTables;

fn sign_of(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        Rational::from_int(-1)
    }
}

/// Wedge product of chain sections `C_k(W₁) × C_l(W₂) → C_{k+l}(W₃)` through a pairing.
#[allow(clippy::too_many_arguments)]
pub fn wedge_sections(
    pairing: &PairingData,
    forms: &FormTables,
    k: usize,
    s1: &PolySectionSpace,
    v1: &SparseVec,
    l: usize,
    s2: &PolySectionSpace,
    v2: &SparseVec,
    s3: &PolySectionSpace,
) -> Result<SparseVec> {
    let (w1, w2, w3) = (pairing.source1.dim(), pairing.source2.dim(), pairing.target.dim());
    if s1.fiber_dim() != forms.dim(k) * w1 || s2.fiber_dim() != forms.dim(l) * w2 || s3.fiber_dim() != forms.dim(k + l) * w3 {
        return Err(Error::Dimension("section spaces do not match the pairing".into()));
    }
    let mono = s1.monomials();
    if mono != s2.monomials() || mono != s3.monomials() {
        return Err(Error::SpaceMismatch("wedge of sections over different degree cutoffs".into()));
    }
    let f3 = s3.fiber_dim();
    let mut acc = DenseAccumulator::new(s3.dim());
    let b2 = s2.blocks(v2);
    for (m1, x1) in s1.blocks(v1) {
        for (m2, x2) in &b2 {
            let m3 = mono.mul(m1, *m2).ok_or(Error::DegreeOverflow {
                got: mono.degree(m1) + mono.degree(*m2),
                max: mono.max_degree(),
            })?;
            for (i1, c1) in x1.entries() {
                let (ia, a) = (i1 / w1, i1 % w1);
                for (i2, c2) in x2.entries() {
                    let (ib, b) = (i2 / w2, i2 % w2);
                    let Some((sign, ic)) = forms.wedge_basis(k, ia, l, ib) else { continue };
                    let c = c1 * c2 * Rational::from_int(sign);
                    for (t, p) in pairing.map.col(a * w2 + b) {
                        acc.add_mul(m3 * f3 + ic * w3 + t, &c, p);
                    }
                }
            }
        }
    }
    Ok(acc.drain_vec())
}

/// Contraction `C_k(W) × C_j(W)* → Λ^{j−k} m`, `⟨θ, α⌐b⟩ = ⟨θ∧α, b⟩` for `(j−k)`-forms `θ`,
/// with `W ⊗ W* → ℝ` the evaluation.
#[allow(clippy::too_many_arguments)]
pub fn contract_sections(
    forms: &FormTables,
    w: usize,
    k: usize,
    s1: &PolySectionSpace,
    alpha: &SparseVec,
    j: usize,
    s2: &PolySectionSpace,
    b: &SparseVec,
    out: &PolySectionSpace,
) -> Result<SparseVec> {
    let l = j.checked_sub(k).ok_or(Error::DegreeOutOfRange { k, max: j })?;
    if s1.fiber_dim() != forms.dim(k) * w || s2.fiber_dim() != forms.dim(j) * w || out.fiber_dim() != forms.dim(l) {
        return Err(Error::Dimension("section spaces do not match the contraction".into()));
    }
    let mono = s1.monomials();
    let by_fiber: HashMap<usize, Vec<(usize, Rational)>> = s2.blocks(b).into_iter().fold(HashMap::new(), |mut h, (m, x)| {
        for (f, c) in x.entries() {
            h.entry(*f).or_default().push((m, c.clone()));
        }
        h
    });
    let fo = out.fiber_dim();
    let mut acc = DenseAccumulator::new(out.dim());
    for (m1, x1) in s1.blocks(alpha) {
        for (i1, c1) in x1.entries() {
            let (ia, c) = (i1 / w, i1 % w);
            for jp in 0..forms.dim(l) {
                let Some((sign, ik)) = forms.wedge_basis(l, jp, k, ia) else { continue };
                let Some(list) = by_fiber.get(&(ik * w + c)) else { continue };
                let coeff = c1 * Rational::from_int(sign);
                for (m2, c2) in list {
                    let m3 = mono.mul(m1, *m2).ok_or(Error::DegreeOverflow {
                        got: mono.degree(m1) + mono.degree(*m2),
                        max: mono.max_degree(),
                    })?;
                    acc.add_mul(m3 * fo + jp, &coeff, c2);
                }
            }
        }
    }
    Ok(acc.drain_vec())
}

/// Cup product `⊔ = proj ∘ Π ∘ ∧ ∘ (Π∘repr, Π∘repr)` for a pairing between three contexts.
#[derive(Clone, Copy)]
pub struct Product<'a> {
    pub pairing: &'a PairingData,
    pub left: &'a BggContext,
    pub right: &'a BggContext,
    pub target: &'a BggContext,
}

impl<'a> Product<'a> {
    pub fn new(pairing: &'a PairingData, left: &'a BggContext, right: &'a BggContext, target: &'a BggContext) -> Result<Self> {
        for (rep, ctx) in [(&pairing.source1, left), (&pairing.source2, right), (&pairing.target, target)] {
            if !rep.space().same_labels(ctx.rep().space()) {
                return Err(Error::SpaceMismatch(format!("pairing module {} vs context {}", rep.name(), ctx.rep().name())));
            }
        }
        if left.max_degree() != right.max_degree() || left.max_degree() != target.max_degree() {
            return Err(Error::SpaceMismatch("contexts with different degree cutoffs".into()));
        }
        Ok(Product { pairing, left, right, target })
    }

    fn check(&self, k: usize) -> Result<()> {
        let n = self.target.n();
        if k > n {
            return Err(Error::DegreeOutOfRange { k, max: n });
        }
        Ok(())
    }

    /// Wedge of chain sections of the left and right contexts.
    pub fn wedge_chains(&self, k: usize, a: &SparseVec, l: usize, b: &SparseVec) -> Result<SparseVec> {
        self.check(k + l)?;
        wedge_sections(
            self.pairing,
            self.left.forms(),
            k,
            self.left.chain_sections(k),
            a,
            l,
            self.right.chain_sections(l),
            b,
            self.target.chain_sections(k + l),
        )
    }

    pub fn cup(&self, k: usize, alpha: &SparseVec, l: usize, beta: &SparseVec) -> Result<SparseVec> {
        self.check(k + l)?;
        let a = self.left.primal().apply_represent(k, alpha)?;
        let b = self.right.primal().apply_represent(l, beta)?;
        self.target.primal().apply_project(k + l, &self.wedge_chains(k, &a, l, &b)?)
    }

    /// `D(α⊔β) − Dα⊔β − (−1)^k α⊔Dβ`; `None` when `k + l` is the top degree.
    pub fn leibniz_residual(&self, k: usize, alpha: &SparseVec, l: usize, beta: &SparseVec) -> Result<Option<SparseVec>> {
        if k + l >= self.target.n() {
            return Ok(None);
        }
        let prod = self.cup(k, alpha, l, beta)?;
        let mut r = self.target.primal().apply_bgg(k + l, &prod)?.expect("degree below top");
        if let Some(da) = self.left.primal().apply_bgg(k, alpha)? {
            r = r.sub(&self.cup(k + 1, &da, l, beta)?);
        }
        if let Some(db) = self.right.primal().apply_bgg(l, beta)? {
            r = r.axpy(&-sign_of(k), &self.cup(k, alpha, l + 1, &db)?);
        }
        Ok(Some(r))
    }
}

/// Triple product `⟨α,β,γ⟩ = [Π((−1)^k Πα∧Q(Πβ∧Πγ) − Q(Πα∧Πβ)∧Πγ)]` from the four pairings
/// `W₁⊗W₂→W₁₂`, `W₁₂⊗W₃→W₄`, `W₂⊗W₃→W₂₃`, `W₁⊗W₂₃→W₄`.
#[derive(Clone, Copy)]
pub struct Triple<'a> {
    pub ab: Product<'a>,
    pub ab_c: Product<'a>,
    pub bc: Product<'a>,
    pub a_bc: Product<'a>,
}

/// One summand of the associator identity, already signed so that the summands add to zero.
pub type SignedTerm = (String, SparseVec);

impl<'a> Triple<'a> {
    pub fn new(ab: Product<'a>, ab_c: Product<'a>, bc: Product<'a>, a_bc: Product<'a>) -> Result<Self> {
        let same = |x: &BggContext, y: &BggContext| std::ptr::eq(x, y);
        if !(same(ab.target, ab_c.left)
            && same(bc.target, a_bc.right)
            && same(ab.left, a_bc.left)
            && same(ab.right, bc.left)
            && same(bc.right, ab_c.right)
            && same(ab_c.target, a_bc.target))
        {
            return Err(Error::SpaceMismatch("triple product contexts do not fit together".into()));
        }
        Ok(Triple { ab, ab_c, bc, a_bc })
    }

    /// Chain-level triple product on canonical representatives; `None` outside degrees `0..=n`.
    fn chain_triple(&self, k: usize, a: &SparseVec, l: usize, b: &SparseVec, m: usize, c: &SparseVec) -> Result<Option<SparseVec>> {
        let n = self.a_bc.target.n();
        if k + l + m == 0 || k + l + m > n + 1 {
            return Ok(None);
        }
        let deg = k + l + m - 1;
        let out_space = self.a_bc.target.chain_sections(deg);
        let mut out = SparseVec::zero(out_space.dim());
        if l + m > 0 && l + m <= n {
            let bc = self.bc.wedge_chains(l, b, m, c)?;
            if let Some(q) = self.bc.target.primal().apply_q(l + m, &bc)? {
                out = out.axpy(&sign_of(k), &self.a_bc.wedge_chains(k, a, l + m - 1, &q)?);
            }
        }
        if k + l > 0 && k + l <= n {
            let ab = self.ab.wedge_chains(k, a, l, b)?;
            if let Some(q) = self.ab.target.primal().apply_q(k + l, &ab)? {
                out = out.sub(&self.ab_c.wedge_chains(k + l - 1, &q, m, c)?);
            }
        }
        Ok(Some(out))
    }

    pub fn triple(&self, k: usize, alpha: &SparseVec, l: usize, beta: &SparseVec, m: usize, gamma: &SparseVec) -> Result<Option<SparseVec>> {
        if k + l + m == 0 || k + l + m > self.a_bc.target.n() + 1 {
            return Ok(None);
        }
        let a = self.ab.left.primal().apply_represent(k, alpha)?;
        let b = self.ab.right.primal().apply_represent(l, beta)?;
        let c = self.bc.right.primal().apply_represent(m, gamma)?;
        match self.chain_triple(k, &a, l, &b, m, &c)? {
            Some(t) => Ok(Some(self.a_bc.target.primal().apply_project(k + l + m - 1, &t)?)),
            None => Ok(None),
        }
    }

    /// Summands of `D⟨α,β,γ⟩ − (α⊔β)⊔γ + α⊔(β⊔γ) + ⟨Dα,β,γ⟩ + (−1)^k⟨α,Dβ,γ⟩ + (−1)^{k+l}⟨α,β,Dγ⟩`.
    /// Empty when `k + l + m` exceeds the top degree.
    #[allow(clippy::too_many_arguments)]
    pub fn associator_terms(&self, k: usize, alpha: &SparseVec, l: usize, beta: &SparseVec, m: usize, gamma: &SparseVec) -> Result<Vec<SignedTerm>> {
        let total = k + l + m;
        let top = self.a_bc.target;
        if total > top.n() {
            return Ok(Vec::new());
        }
        let dim = top.homology_sections(total).dim();
        let zero = || SparseVec::zero(dim);
        let mut terms = Vec::new();
        let t = match self.triple(k, alpha, l, beta, m, gamma)? {
            Some(t) => top.primal().apply_bgg(total - 1, &t)?.expect("degree below top"),
            None => zero(),
        };
        terms.push(("D⟨α,β,γ⟩".to_string(), t));
        let ab = self.ab.cup(k, alpha, l, beta)?;
        terms.push(("−(α⊔β)⊔γ".to_string(), self.ab_c.cup(k + l, &ab, m, gamma)?.scale(&Rational::from_int(-1))));
        let bc = self.bc.cup(l, beta, m, gamma)?;
        terms.push(("α⊔(β⊔γ)".to_string(), self.a_bc.cup(k, alpha, l + m, &bc)?));
        let da = self.ab.left.primal().apply_bgg(k, alpha)?;
        let db = self.ab.right.primal().apply_bgg(l, beta)?;
        let dc = self.bc.right.primal().apply_bgg(m, gamma)?;
        let t = match da {
            Some(da) => self.triple(k + 1, &da, l, beta, m, gamma)?.unwrap_or_else(zero),
            _ => zero(),
        };
        terms.push(("⟨Dα,β,γ⟩".to_string(), t));
        let t = match db {
            Some(db) => self.triple(k, alpha, l + 1, &db, m, gamma)?.unwrap_or_else(zero).scale(&sign_of(k)),
            None => zero(),
        };
        terms.push(("(−1)^k⟨α,Dβ,γ⟩".to_string(), t));
        let t = match dc {
            Some(dc) => self.triple(k, alpha, l, beta, m + 1, &dc)?.unwrap_or_else(zero).scale(&sign_of(k + l)),
            None => zero(),
        };
        terms.push(("(−1)^{k+l}⟨α,β,Dγ⟩".to_string(), t));
        Ok(terms)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn associator_residual(&self, k: usize, alpha: &SparseVec, l: usize, beta: &SparseVec, m: usize, gamma: &SparseVec) -> Result<Option<SparseVec>> {
        let terms = self.associator_terms(k, alpha, l, beta, m, gamma)?;
        let mut it = terms.into_iter().map(|(_, v)| v);
        let Some(first) = it.next() else { return Ok(None) };
        Ok(Some(it.fold(first, |acc, v| acc.add(&v))))
    }
}
