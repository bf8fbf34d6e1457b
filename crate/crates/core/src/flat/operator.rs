use std::collections::BTreeMap;
use std::sync::Arc;

use super::{MonomialBasis, PolySectionSpace};
use crate::error::{Error, Result};
use crate::exact::{DenseAccumulator, OperatorMatrix, Rational, SparseMatrix, SparseVec};

/// Constant-coefficient differential operator `Σ_α A_α ∂^α` between polynomial section spaces.
///
/// Multi-indices are stored as monomial indices of the shared [`MonomialBasis`]. Summands
/// with `|α| > D` act by zero on the truncated spaces and are dropped, so two operators
/// are equal exactly when their matrices are.
#[derive(Clone, Debug)]
pub struct FlatOperator {
    domain: Arc<PolySectionSpace>,
    codomain: Arc<PolySectionSpace>,
    terms: BTreeMap<usize, SparseMatrix>,
}

impl PartialEq for FlatOperator {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.terms == other.terms
    }
}

fn same_monomials(a: &PolySectionSpace, b: &PolySectionSpace) -> Result<()> {
    if a.monomials() != b.monomials() {
        return Err(Error::SpaceMismatch(format!(
            "sections over {:?} and {:?}",
            a.monomials(),
            b.monomials()
        )));
    }
    Ok(())
}

impl FlatOperator {
    pub fn new(
        domain: Arc<PolySectionSpace>,
        codomain: Arc<PolySectionSpace>,
        terms: impl IntoIterator<Item = (usize, SparseMatrix)>,
    ) -> Result<Self> {
        same_monomials(&domain, &codomain)?;
        let mut map: BTreeMap<usize, SparseMatrix> = BTreeMap::new();
        for (a, m) in terms {
            if a >= domain.monomials().len() {
                return Err(Error::DegreeOverflow { got: domain.max_degree() + 1, max: domain.max_degree() });
            }
            if m.nrows() != codomain.fiber_dim() || m.ncols() != domain.fiber_dim() {
                return Err(Error::Dimension(format!(
                    "symbol is {}×{}, fibers need {}×{}",
                    m.nrows(),
                    m.ncols(),
                    codomain.fiber_dim(),
                    domain.fiber_dim()
                )));
            }
            match map.get_mut(&a) {
                Some(old) => *old = old.add(&m),
                None => {
                    map.insert(a, m);
                }
            }
        }
        map.retain(|_, m| !m.is_zero());
        Ok(FlatOperator { domain, codomain, terms: map })
    }

    fn from_map(domain: Arc<PolySectionSpace>, codomain: Arc<PolySectionSpace>, mut terms: BTreeMap<usize, SparseMatrix>) -> Self {
        terms.retain(|_, m| !m.is_zero());
        FlatOperator { domain, codomain, terms }
    }

    pub fn zero(domain: Arc<PolySectionSpace>, codomain: Arc<PolySectionSpace>) -> Self {
        FlatOperator { domain, codomain, terms: BTreeMap::new() }
    }

    pub fn identity(space: Arc<PolySectionSpace>) -> Self {
        let id = SparseMatrix::identity(space.fiber_dim());
        Self::from_map(space.clone(), space, BTreeMap::from([(0, id)]))
    }

    /// Zero-order operator acting by `a` on every monomial block.
    pub fn lift(a: &SparseMatrix, domain: Arc<PolySectionSpace>, codomain: Arc<PolySectionSpace>) -> Result<Self> {
        Self::new(domain, codomain, [(0, a.clone())])
    }

    /// `A ∂_i`.
    pub fn partial(a: &SparseMatrix, i: usize, domain: Arc<PolySectionSpace>, codomain: Arc<PolySectionSpace>) -> Result<Self> {
        if domain.max_degree() == 0 {
            return Ok(Self::zero(domain, codomain));
        }
        let idx = domain.monomials().variable(i);
        Self::new(domain, codomain, [(idx, a.clone())])
    }

    pub fn domain(&self) -> &Arc<PolySectionSpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<PolySectionSpace> {
        &self.codomain
    }

    pub fn monomials(&self) -> &Arc<MonomialBasis> {
        self.domain.monomials()
    }

    /// Nonzero summands `(α as monomial index, A_α)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &SparseMatrix)> {
        self.terms.iter().map(|(a, m)| (*a, m))
    }

    /// Symbol decomposition with explicit multi-indices.
    pub fn symbol_decomposition(&self) -> Vec<(Vec<u32>, &SparseMatrix)> {
        self.terms.iter().map(|(a, m)| (self.monomials().exponents(*a).to_vec(), m)).collect()
    }

    pub fn symbol(&self, alpha: &[u32]) -> Option<&SparseMatrix> {
        self.monomials().index_of(alpha).and_then(|a| self.terms.get(&a))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order with a nonzero summand; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|&a| self.monomials().degree(a)).max()
    }

    /// Orders of all nonzero summands.
    pub fn orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|&a| self.monomials().degree(a)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn check_same_spaces(&self, other: &FlatOperator) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::SpaceMismatch("flat operators between different section spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FlatOperator) -> Result<FlatOperator> {
        self.check_same_spaces(other)?;
        let mut terms = self.terms.clone();
        for (a, m) in &other.terms {
            match terms.get_mut(a) {
                Some(old) => *old = old.add(m),
                None => {
                    terms.insert(*a, m.clone());
                }
            }
        }
        Ok(Self::from_map(self.domain.clone(), self.codomain.clone(), terms))
    }

    pub fn sub(&self, other: &FlatOperator) -> Result<FlatOperator> {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> FlatOperator {
        let terms = self.terms.iter().map(|(a, m)| (*a, m.scale(c))).collect();
        Self::from_map(self.domain.clone(), self.codomain.clone(), terms)
    }

    /// `self ∘ rhs`; constant coefficients compose symbolwise, `A∂^α ∘ B∂^β = AB ∂^{α+β}`.
    pub fn compose(&self, rhs: &FlatOperator) -> Result<FlatOperator> {
        if rhs.codomain != self.domain {
            return Err(Error::SpaceMismatch("composition of flat operators with mismatched spaces".into()));
        }
        let mono = self.monomials();
        let mut terms: BTreeMap<usize, SparseMatrix> = BTreeMap::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &rhs.terms {
                let Some(c) = mono.mul(*a, *b) else { continue };
                let p = ma.mul(mb);
                match terms.get_mut(&c) {
                    Some(old) => *old = old.add(&p),
                    None => {
                        terms.insert(c, p);
                    }
                }
            }
        }
        Ok(Self::from_map(rhs.domain.clone(), self.codomain.clone(), terms))
    }

    /// Pre- and post-multiply every symbol by fiber maps, changing the spaces.
    pub fn conjugate(
        &self,
        left: &SparseMatrix,
        right: &SparseMatrix,
        domain: Arc<PolySectionSpace>,
        codomain: Arc<PolySectionSpace>,
    ) -> Result<FlatOperator> {
        let terms: Vec<_> = self.terms.iter().map(|(a, m)| (*a, left.mul(&m.mul(right)))).collect();
        Self::new(domain, codomain, terms)
    }

    /// Apply to a section vector of the domain.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        debug_assert_eq!(v.dim(), self.domain.dim());
        let mono = self.monomials();
        let fo = self.codomain.fiber_dim();
        let mut acc = DenseAccumulator::new(self.codomain.dim());
        for (m, x) in self.domain.blocks(v) {
            for (a, ma) in &self.terms {
                let Some((t, c)) = mono.derive(m, *a) else { continue };
                let c = Rational::from_int(c);
                for (i, val) in ma.apply(&x).entries() {
                    acc.add_mul(t * fo + i, &c, val);
                }
            }
        }
        acc.drain_vec()
    }

    /// Matrix of the operator on the truncated section spaces.
    pub fn matrix(&self) -> SparseMatrix {
        let mono = self.monomials();
        let (fi, fo) = (self.domain.fiber_dim(), self.codomain.fiber_dim());
        let mut trips = Vec::new();
        for m in 0..mono.len() {
            for (a, ma) in &self.terms {
                let Some((t, c)) = mono.derive(m, *a) else { continue };
                let c = Rational::from_int(c);
                for j in 0..fi {
                    for (i, val) in ma.col(j) {
                        trips.push((t * fo + i, m * fi + j, &c * val));
                    }
                }
            }
        }
        SparseMatrix::from_triplets(self.codomain.dim(), self.domain.dim(), trips)
    }

    pub fn operator_matrix(&self) -> OperatorMatrix {
        OperatorMatrix::new(
            Arc::new(self.domain.based_space()),
            Arc::new(self.codomain.based_space()),
            self.matrix(),
        )
        .expect("dimensions agree")
    }

    /// Recover the symbol decomposition of a matrix on truncated section spaces:
    /// `A_α = (1/α!) · (constant-term rows of M(x^α ⊗ ·))`. Fails unless the matrix is the
    /// assembly of that decomposition.
    pub fn from_matrix(domain: Arc<PolySectionSpace>, codomain: Arc<PolySectionSpace>, m: &SparseMatrix) -> Result<Self> {
        same_monomials(&domain, &codomain)?;
        if m.nrows() != codomain.dim() || m.ncols() != domain.dim() {
            return Err(Error::Dimension(format!("matrix {}×{} on section spaces", m.nrows(), m.ncols())));
        }
        let mono = domain.monomials().clone();
        let (fi, fo) = (domain.fiber_dim(), codomain.fiber_dim());
        let mut terms = Vec::new();
        for a in 0..mono.len() {
            let inv = Rational::new(1, mono.factorial(a));
            let mut trips = Vec::new();
            for j in 0..fi {
                for (i, v) in m.col(a * fi + j) {
                    if *i < fo {
                        trips.push((*i, j, v * &inv));
                    }
                }
            }
            terms.push((a, SparseMatrix::from_triplets(fo, fi, trips)));
        }
        let op = Self::new(domain, codomain, terms)?;
        if op.matrix() != *m {
            return Err(Error::Invariant("matrix is not a constant-coefficient differential operator".into()));
        }
        Ok(op)
    }

    /// Formal adjoint `Σ (−1)^{|α|} A_αᵀ ∂^α` on the dual fibers, which the caller supplies as
    /// `domain` (dual of this codomain) and `codomain` (dual of this domain).
    pub fn formal_adjoint(&self, domain: Arc<PolySectionSpace>, codomain: Arc<PolySectionSpace>) -> Result<FlatOperator> {
        if domain.fiber_dim() != self.codomain.fiber_dim() || codomain.fiber_dim() != self.domain.fiber_dim() {
            return Err(Error::Dimension("adjoint fibers do not match".into()));
        }
        let mono = self.monomials().clone();
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(a, m)| {
                let t = m.transpose();
                (*a, if mono.degree(*a) % 2 == 1 { t.scale(&Rational::from_int(-1)) } else { t })
            })
            .collect();
        Self::new(domain, codomain, terms)
    }

    /// The same operator on sections of degree `≤ d`.
    pub fn restrict_degree(&self, d: usize) -> FlatOperator {
        let mono = Arc::new(MonomialBasis::new(self.monomials().n(), d));
        let map = |a: usize| mono.index_of(self.monomials().exponents(a));
        let terms = self.terms.iter().filter_map(|(a, m)| map(*a).map(|b| (b, m.clone()))).collect();
        Self::from_map(
            Arc::new(self.domain.with_monomials(mono.clone())),
            Arc::new(self.codomain.with_monomials(mono)),
            terms,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::BasedSpace;

    fn scalar(n: usize, d: usize) -> Arc<PolySectionSpace> {
        Arc::new(PolySectionSpace::new(
            Arc::new(MonomialBasis::new(n, d)),
            Arc::new(BasedSpace::numbered("f", 1)),
        ))
    }

    #[test]
    fn partial_and_adjoint() {
        let s = scalar(2, 3);
        let one = SparseMatrix::identity(1);
        let d1 = FlatOperator::partial(&one, 0, s.clone(), s.clone()).unwrap();
        let adj = d1.formal_adjoint(s.clone(), s.clone()).unwrap();
        assert_eq!(adj, d1.scale(&Rational::from_int(-1)));
        assert_eq!(adj.formal_adjoint(s.clone(), s.clone()).unwrap(), d1);
        let x1sq = s.section(&[(vec![2, 0], "f0".into(), Rational::one())]).unwrap();
        let want = s.section(&[(vec![1, 0], "f0".into(), Rational::from_int(2))]).unwrap();
        assert_eq!(d1.apply(&x1sq), want);
    }

    #[test]
    fn matrix_roundtrip() {
        let s = scalar(2, 3);
        let one = SparseMatrix::identity(1);
        let d1 = FlatOperator::partial(&one, 0, s.clone(), s.clone()).unwrap();
        let d2 = FlatOperator::partial(&one, 1, s.clone(), s.clone()).unwrap();
        let op = d1.compose(&d2).unwrap().add(&d1.scale(&Rational::new(3, 2))).unwrap();
        assert_eq!(op.order(), Some(2));
        let m = op.matrix();
        assert_eq!(FlatOperator::from_matrix(s.clone(), s.clone(), &m).unwrap(), op);
        assert_eq!(m.mul(&m), op.compose(&op).unwrap().matrix());
        let mut bad = m.triplets();
        bad.push((0, 0, Rational::one()));
        let bad = SparseMatrix::from_triplets(m.nrows(), m.ncols(), bad);
        assert!(FlatOperator::from_matrix(s.clone(), s, &bad).is_err());
    }

    #[test]
    fn composition_beyond_cutoff_vanishes() {
        let s = scalar(1, 2);
        let d = FlatOperator::partial(&SparseMatrix::identity(1), 0, s.clone(), s.clone()).unwrap();
        let d3 = d.compose(&d).unwrap().compose(&d).unwrap();
        assert!(d3.is_zero());
        assert!(d3.matrix().is_zero());
    }
}
