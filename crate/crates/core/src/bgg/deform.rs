use super::{BggContext, PairingData, Product};
use crate::error::{Error, Result};
use crate::exact::{elim, SparseVec};

/// Second-order obstruction data for an infinitesimal deformation `A ∈ ker D₁`.
#[derive(Clone, Debug)]
pub struct DeformationReport {
    /// `A ⊔ A`, a section of `H₂`.
    pub square: SparseVec,
    /// `D₂(A ⊔ A)`, zero whenever `D₁A = 0`. `None` when `H₂` is the top degree.
    pub closed_residual: Option<SparseVec>,
    /// `B` with `D₁B = A ⊔ A` inside the degree cutoff, if one exists.
    pub primitive: Option<SparseVec>,
}

impl DeformationReport {
    pub fn is_closed(&self) -> bool {
        self.closed_residual.as_ref().is_none_or(SparseVec::is_zero)
    }

    pub fn is_exact(&self) -> bool {
        self.primitive.is_some()
    }
}

/// Checks `D₁A = 0`, then forms `A ⊔ A` through the bracket pairing and solves `D₁B = A ⊔ A`.
pub fn deformation_obstruction(ctx: &BggContext, bracket: &PairingData, a: &SparseVec) -> Result<DeformationReport> {
    if ctx.n() < 2 {
        return Err(Error::Unsupported("deformations need n ≥ 2".into()));
    }
    let primal = ctx.primal();
    let d1a = primal.apply_bgg(1, a)?.expect("D₁ exists for n ≥ 2");
    if !d1a.is_zero() {
        return Err(Error::Rejected(format!("D₁A ≠ 0 ({} nonzero coefficients)", d1a.nnz())));
    }
    let product = Product::new(bracket, ctx, ctx, ctx)?;
    let square = product.cup(1, a, 1, a)?;
    let closed_residual = primal.apply_bgg(2, &square)?;
    let d1 = primal.bgg(1)?.expect("D₁ exists for n ≥ 2").matrix();
    let primitive = elim::solve(&d1, &square);
    Ok(DeformationReport { square, closed_residual, primitive })
}

/// Obstruction report for the gauge-trivial deformation `A = D₀f`.
pub fn gauge_obstruction(ctx: &BggContext, bracket: &PairingData, f: &SparseVec) -> Result<(SparseVec, DeformationReport)> {
    let a = ctx.primal().apply_bgg(0, f)?.ok_or(Error::DegreeOutOfRange { k: 0, max: ctx.n() })?;
    let report = deformation_obstruction(ctx, bracket, &a)?;
    Ok((a, report))
}
