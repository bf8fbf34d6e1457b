use std::sync::Arc;

use super::{FlatOperator, MonomialBasis, PolySectionSpace};
use crate::error::{Error, Result};
use crate::exact::{BasedSpace, OperatorMatrix, SparseMatrix};
use crate::homology::ChainComplexData;

pub fn poly_section_space(fiber: Arc<BasedSpace>, n: usize, max_degree: usize) -> PolySectionSpace {
    PolySectionSpace::new(Arc::new(MonomialBasis::new(n, max_degree)), fiber)
}

/// Block-diagonal action of a fiber map, one block per monomial.
pub fn lift_fiberwise(a: &OperatorMatrix, s: &Arc<PolySectionSpace>) -> Result<FlatOperator> {
    if !a.domain.same_labels(s.fiber()) {
        return Err(Error::SpaceMismatch("fiber map domain differs from the section fiber".into()));
    }
    let codomain = Arc::new(s.with_fiber(a.codomain.clone()));
    FlatOperator::lift(&a.matrix, s.clone(), codomain)
}

/// Polynomial sections of the chain bundles `Λ^k T*M ⊗ W` over the big cell of an
/// abelian parabolic, with coordinates `x_i` dual to the basis `e_i` of `m`.
#[derive(Clone, Debug)]
pub struct FlatModel {
    cx: Arc<ChainComplexData>,
    mono: Arc<MonomialBasis>,
    spaces: Vec<Arc<PolySectionSpace>>,
}

impl FlatModel {
    pub fn new(cx: Arc<ChainComplexData>, max_degree: usize) -> Result<Self> {
        if !cx.graded_algebra().grading.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let mono = Arc::new(MonomialBasis::new(cx.n(), max_degree));
        let spaces = (0..=cx.n()).map(|k| Arc::new(PolySectionSpace::new(mono.clone(), cx.space(k).clone()))).collect();
        Ok(FlatModel { cx, mono, spaces })
    }

    pub fn chains(&self) -> &Arc<ChainComplexData> {
        &self.cx
    }

    pub fn monomials(&self) -> &Arc<MonomialBasis> {
        &self.mono
    }

    pub fn n(&self) -> usize {
        self.cx.n()
    }

    pub fn max_degree(&self) -> usize {
        self.mono.max_degree()
    }

    pub fn section_space(&self, k: usize) -> &Arc<PolySectionSpace> {
        &self.spaces[k]
    }

    /// Fiberwise lift of a map `C_from → C_to`.
    pub fn lift(&self, from: usize, to: usize, a: &SparseMatrix) -> Result<FlatOperator> {
        FlatOperator::lift(a, self.spaces[from].clone(), self.spaces[to].clone())
    }

    /// Lifted codifferential `C_k → C_{k−1}`.
    pub fn delta(&self, k: usize) -> Result<FlatOperator> {
        if k == 0 || k > self.n() {
            return Err(Error::DegreeOutOfRange { k, max: self.n() });
        }
        self.lift(k, k - 1, self.cx.delta(k))
    }

    /// `Σ_i (ε^i ∧ ·) ∘ ∂_i` from `C_k`-sections to `C_{k+1}`-sections.
    pub fn coordinate_exterior_derivative(&self, k: usize) -> Result<FlatOperator> {
        if k >= self.n() {
            return Err(Error::DegreeOutOfRange { k, max: self.n().saturating_sub(1) });
        }
        let mut op = FlatOperator::zero(self.spaces[k].clone(), self.spaces[k + 1].clone());
        for i in 0..self.n() {
            let t = FlatOperator::partial(&self.cx.wedge_chain(k, i), i, self.spaces[k].clone(), self.spaces[k + 1].clone())?;
            op = op.add(&t)?;
        }
        Ok(op)
    }

    /// `d^g = d_coord + d_m`, the twisted deRham differential of the flat twistor connection.
    pub fn twisted_de_rham(&self, k: usize) -> Result<FlatOperator> {
        let coord = self.coordinate_exterior_derivative(k)?;
        let dm = self.lift(k, k + 1, self.cx.d(k)?)?;
        coord.add(&dm)
    }

    /// `Σ_i ρ_C(ε^i) ∂_i` on `C_k`-sections.
    pub fn epsilon_derivative(&self, k: usize) -> Result<FlatOperator> {
        let ga = self.cx.graded_algebra();
        let s = self.spaces[k].clone();
        let mut op = FlatOperator::zero(s.clone(), s.clone());
        for i in 0..self.n() {
            let act = self.cx.p_action_matrix(&ga.grading.m_dual()[i], k)?;
            op = op.add(&FlatOperator::partial(&act, i, s.clone(), s.clone())?)?;
        }
        Ok(op)
    }
}
