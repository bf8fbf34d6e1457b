use std::sync::Arc;

use super::FormTables;
use crate::error::{Error, Result};
use crate::exact::{BasedSpace, Rational, SparseMatrix, SparseVec};
use crate::lie::{GradedAlgebra, RepresentationData, Scope};

/// Chain spaces `C_k = Λ^k m* ⊗ W` with codifferential, coboundary and Kostant's quabla.
///
/// The basis of `C_k` is `ε^I ⊗ w` with index `rank(I) · dim W + index(w)`.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    ga: Arc<GradedAlgebra>,
    rep: Arc<RepresentationData>,
    forms: Arc<FormTables>,
    spaces: Vec<Arc<BasedSpace>>,
    /// `ρ(ε^i)` on `W`.
    rho_eps: Vec<SparseMatrix>,
    /// `ρ(e_i)` on `W`, for g-modules.
    rho_e: Option<Vec<SparseMatrix>>,
    delta: Vec<SparseMatrix>,
    d: Option<Vec<SparseMatrix>>,
    quabla: Option<Vec<SparseMatrix>>,
}

fn half() -> Rational {
    Rational::new(1, 2)
}

impl ChainComplexData {
    pub fn new(ga: Arc<GradedAlgebra>, rep: Arc<RepresentationData>) -> Result<Self> {
        let n = ga.grading.n();
        let forms = Arc::new(FormTables::new(n));
        let w = rep.dim();
        let mut rho_eps = Vec::with_capacity(n);
        for eps in ga.grading.m_dual() {
            rho_eps.push(rep.act(eps)?);
        }
        let rho_e = if rep.scope() == Scope::GModule {
            Some(ga.grading.m_basis().iter().map(|&b| rep.action(b).cloned()).collect::<Result<Vec<_>>>()?)
        } else {
            None
        };
        let spaces = (0..=n).map(|k| Arc::new(chain_space_basis(&ga, &rep, &forms, k))).collect();
        let mut cx = ChainComplexData {
            ga,
            rep,
            forms,
            spaces,
            rho_eps,
            rho_e,
            delta: Vec::new(),
            d: None,
            quabla: None,
        };
        let iw = SparseMatrix::identity(w);
        let mut delta = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut m = SparseMatrix::zeros(if k == 0 { 0 } else { cx.dim(k - 1) }, cx.dim(k));
            if k > 0 {
                for i in 0..n {
                    let act = cx.form_action(&cx.ga.grading.m_dual()[i].clone(), k - 1);
                    let first = act.mul(cx.forms.interior(k, i)).scale(&half()).kron(&iw);
                    let second = cx.forms.interior(k, i).kron(&cx.rho_eps[i]);
                    m = m.add(&first).add(&second);
                }
            }
            delta.push(m);
        }
        cx.delta = delta;
        if let Some(rho_e) = cx.rho_e.clone() {
            let mut d = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut m = SparseMatrix::zeros(if k == n { 0 } else { cx.dim(k + 1) }, cx.dim(k));
                if k < n {
                    for (i, re) in rho_e.iter().enumerate() {
                        let e_i = SparseVec::unit(cx.ga.algebra.dim(), cx.ga.grading.m_basis()[i]);
                        let act = cx.form_action(&e_i, k);
                        let first = cx.forms.wedge(k, i).mul(&act).scale(&half()).kron(&iw);
                        let second = cx.forms.wedge(k, i).kron(re);
                        m = m.add(&first).add(&second);
                    }
                }
                d.push(m);
            }
            let quabla = (0..=n)
                .map(|k| {
                    let mut q = SparseMatrix::zeros(cx.dim(k), cx.dim(k));
                    if k < n {
                        q = q.add(&cx.delta[k + 1].mul(&d[k]));
                    }
                    if k > 0 {
                        q = q.add(&d[k - 1].mul(&cx.delta[k]));
                    }
                    q
                })
                .collect();
            cx.d = Some(d);
            cx.quabla = Some(quabla);
        }
        Ok(cx)
    }

    pub fn graded_algebra(&self) -> &Arc<GradedAlgebra> {
        &self.ga
    }

    pub fn rep(&self) -> &Arc<RepresentationData> {
        &self.rep
    }

    pub fn forms(&self) -> &Arc<FormTables> {
        &self.forms
    }

    /// `dim m`.
    pub fn n(&self) -> usize {
        self.forms.n()
    }

    pub fn w_dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn dim(&self, k: usize) -> usize {
        self.forms.dim(k) * self.rep.dim()
    }

    pub fn space(&self, k: usize) -> &Arc<BasedSpace> {
        &self.spaces[k]
    }

    pub fn rho_eps(&self, i: usize) -> &SparseMatrix {
        &self.rho_eps[i]
    }

    pub fn rho_e(&self, i: usize) -> Result<&SparseMatrix> {
        Ok(&self.rho_e.as_ref().ok_or(Error::NeedsGModule)?[i])
    }

    /// `δ_k : C_k → C_{k-1}`; zero rows at `k = 0`.
    pub fn delta(&self, k: usize) -> &SparseMatrix {
        &self.delta[k]
    }

    /// `d_k : C_k → C_{k+1}`; zero rows at `k = n`.
    pub fn d(&self, k: usize) -> Result<&SparseMatrix> {
        Ok(&self.d.as_ref().ok_or(Error::NeedsGModule)?[k])
    }

    pub fn quabla(&self, k: usize) -> Result<&SparseMatrix> {
        Ok(&self.quabla.as_ref().ok_or(Error::NeedsGModule)?[k])
    }

    pub fn has_coboundary(&self) -> bool {
        self.d.is_some()
    }

    /// `β ↦ Σ_j [v, ε^j]_{m*} ∧ (e_j ⌐ β)` on `Λ^k m*`.
    pub fn form_action(&self, v: &SparseVec, k: usize) -> SparseMatrix {
        let n = self.n();
        let g = &self.ga.algebra;
        let mut out = SparseMatrix::zeros(self.forms.dim(k), self.forms.dim(k));
        if k == 0 {
            return out;
        }
        for j in 0..n {
            let br = g.bracket(v, &self.ga.grading.m_dual()[j]);
            let coords = self.ga.grading.m_star_coords(&br);
            for (l, c) in coords.entries() {
                out = out.axpy(c, &self.forms.wedge(k - 1, *l).mul(self.forms.interior(k, j)));
            }
        }
        out
    }

    /// Action of `ξ ∈ p` on `C_k`: the form action tensored with `ρ(ξ)`.
    pub fn p_action_matrix(&self, xi: &SparseVec, k: usize) -> Result<SparseMatrix> {
        if !self.ga.grading.in_p(xi) {
            return Err(Error::NotInParabolic(self.ga.algebra.basis().describe(xi)));
        }
        self.check_degree(k)?;
        let form = self.form_action(xi, k).kron(&SparseMatrix::identity(self.w_dim()));
        let w = SparseMatrix::identity(self.forms.dim(k)).kron(&self.rep.act(xi)?);
        Ok(form.add(&w))
    }

    /// `ε^i ∧ · ⊗ id_W : C_k → C_{k+1}`.
    pub fn wedge_chain(&self, k: usize, i: usize) -> SparseMatrix {
        self.forms.wedge(k, i).kron(&SparseMatrix::identity(self.w_dim()))
    }

    /// `e_i ⌐ · ⊗ id_W : C_k → C_{k-1}`.
    pub fn interior_chain(&self, k: usize, i: usize) -> SparseMatrix {
        self.forms.interior(k, i).kron(&SparseMatrix::identity(self.w_dim()))
    }

    pub fn check_degree(&self, k: usize) -> Result<()> {
        if k > self.n() {
            Err(Error::DegreeOutOfRange { k, max: self.n() })
        } else {
            Ok(())
        }
    }
}

/// Basis of `C_k`: labels `ε(I)⊗w`, weight `Σ_{i∈I} weight(ε^i) + weight(w)`.
pub fn chain_space_basis(ga: &GradedAlgebra, rep: &RepresentationData, forms: &FormTables, k: usize) -> BasedSpace {
    let mut labels = Vec::with_capacity(forms.dim(k) * rep.dim());
    let mut weights = Vec::with_capacity(labels.capacity());
    for s in forms.subsets(k) {
        let fw: Rational = s.iter().map(|&i| ga.grading.dual_weight(i)).sum();
        let idx = s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        for (wi, wl) in rep.space().labels().iter().enumerate() {
            labels.push(format!("ε({idx})⊗{wl}"));
            weights.push(&fw + rep.space().weight(wi));
        }
    }
    BasedSpace::new(labels, weights).expect("chain labels are distinct")
}

/// `C_k` as a based space, validating the degree.
pub fn chain_space(ga: &GradedAlgebra, rep: &RepresentationData, k: usize) -> Result<BasedSpace> {
    let n = ga.grading.n();
    if k > n {
        return Err(Error::DegreeOutOfRange { k, max: n });
    }
    Ok(chain_space_basis(ga, rep, &FormTables::new(n), k))
}
