use std::sync::Arc;

use super::products::contract_sections;
use super::BggContext;
use crate::error::{Error, Result};
use crate::exact::SparseVec;
use crate::lie::trivial;

/// Cap product of `H_k(W)`-sections with `H_j(W)*`-sections, landing in `(j−k)`-vector fields,
/// together with the divergence on vector fields and the induced pairing.
pub struct CapProduct<'a> {
    ctx: &'a BggContext,
    trivial: BggContext,
}

impl<'a> CapProduct<'a> {
    pub fn new(ctx: &'a BggContext) -> Result<Self> {
        let ga = ctx.graded_algebra().clone();
        let one = Arc::new(trivial(&ga)?);
        let trivial = BggContext::new(ga, one, ctx.max_degree())?;
        Ok(CapProduct { ctx, trivial })
    }

    pub fn context(&self) -> &BggContext {
        self.ctx
    }

    /// The trivial-coefficient context whose dual complex carries the multivector fields.
    pub fn trivial(&self) -> &BggContext {
        &self.trivial
    }

    /// `α ⌐ b` for `α ∈ H_k(W)` and `b ∈ H_j(W)*`, `k ≤ j`.
    pub fn cap(&self, k: usize, alpha: &SparseVec, j: usize, b: &SparseVec) -> Result<SparseVec> {
        let n = self.ctx.n();
        if j > n {
            return Err(Error::DegreeOutOfRange { k: j, max: n });
        }
        let l = j.checked_sub(k).ok_or(Error::DegreeOutOfRange { k, max: j })?;
        let dual = self.ctx.dual()?;
        let a = self.ctx.primal().apply_represent(k, alpha)?;
        let bb = dual.apply_represent(j, b)?;
        let out = self.trivial.dual()?;
        let c = contract_sections(
            self.ctx.forms(),
            self.ctx.rep().dim(),
            k,
            self.ctx.chain_sections(k),
            &a,
            j,
            dual.section_space(j),
            &bb,
            out.section_space(l),
        )?;
        out.apply_project(l, &c)
    }

    /// The function `⟨α, b⟩ = α ⌐ b` for `α ∈ H_k(W)`, `b ∈ H_k(W)*`.
    pub fn pairing(&self, k: usize, alpha: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
        self.cap(k, alpha, k, b)
    }

    /// Pointwise pairing of the raw harmonic components, without canonical representatives.
    pub fn fiber_pairing(&self, k: usize, alpha: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
        let dual = self.ctx.dual()?;
        let a = self.ctx.primal().embed_harmonic(k).apply(alpha);
        let bb = dual.embed_harmonic(k).apply(b);
        contract_sections(
            self.ctx.forms(),
            self.ctx.rep().dim(),
            k,
            self.ctx.chain_sections(k),
            &a,
            k,
            dual.section_space(k),
            &bb,
            self.trivial.dual()?.section_space(0),
        )
    }

    /// Divergence of a vector field, the first dual BGG operator with trivial coefficients.
    pub fn divergence(&self, x: &SparseVec) -> Result<SparseVec> {
        let d = self.trivial.dual()?.apply_bgg(1, x)?;
        d.ok_or_else(|| Error::Invariant("divergence needs a dual operator from level 1".into()))
    }

    /// `div(α ⌐ b) − ⟨Dα, b⟩ − ⟨α, D̂b⟩` for `α ∈ H_k(W)`, `b ∈ H_{k+1}(W)*`.
    pub fn adjointness_residual(&self, k: usize, alpha: &SparseVec, b: &SparseVec) -> Result<SparseVec> {
        let n = self.ctx.n();
        if k >= n {
            return Err(Error::DegreeOutOfRange { k, max: n - 1 });
        }
        let x = self.cap(k, alpha, k + 1, b)?;
        let div = self.divergence(&x)?;
        let da = self.ctx.primal().apply_bgg(k, alpha)?.expect("k below top degree");
        let db = self.ctx.dual()?.apply_bgg(k + 1, b)?.expect("dual operator from k+1");
        Ok(div.sub(&self.pairing(k + 1, &da, b)?).sub(&self.pairing(k, alpha, &db)?))
    }
}
