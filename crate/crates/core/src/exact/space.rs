use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::elim::{self, CoordinateSolver};
use super::{Rational, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// Ordered basis labels with a rational geometric weight per label.
#[derive(Clone, PartialEq, Eq)]
pub struct BasedSpace {
    labels: Vec<String>,
    weights: Vec<Rational>,
    index: HashMap<String, usize>,
}

impl fmt::Debug for BasedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasedSpace").field("labels", &self.labels).field("weights", &self.weights).finish()
    }
}

impl BasedSpace {
    pub fn new(labels: Vec<String>, weights: Vec<Rational>) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::Dimension(format!("{} labels but {} weights", labels.len(), weights.len())));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(BasedSpace { labels, weights, index })
    }

    pub fn unweighted(labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        Self::new(labels, vec![Rational::zero(); n])
    }

    /// Space with labels `prefix0, prefix1, ...` and zero weights.
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Self::unweighted((0..n).map(|i| format!("{prefix}{i}")).collect()).expect("distinct labels")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Identical label lists; weights are metadata and not compared.
    pub fn same_labels(&self, other: &BasedSpace) -> bool {
        self.labels == other.labels
    }

    /// Formats a coordinate vector as `c·label + ...`.
    pub fn describe(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.entries().iter().map(|(i, c)| format!("{c}*{}", self.labels[*i])).collect::<Vec<_>>().join(" + ")
    }
}

/// Sparse exact linear map between based spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub domain: Arc<BasedSpace>,
    pub codomain: Arc<BasedSpace>,
    pub matrix: SparseMatrix,
}

impl OperatorMatrix {
    pub fn new(domain: Arc<BasedSpace>, codomain: Arc<BasedSpace>, matrix: SparseMatrix) -> Result<Self> {
        if matrix.ncols() != domain.dim() || matrix.nrows() != codomain.dim() {
            return Err(Error::Dimension(format!(
                "matrix {}x{} between spaces of dims {} -> {}",
                matrix.nrows(),
                matrix.ncols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        Ok(OperatorMatrix { domain, codomain, matrix })
    }

    pub fn identity(space: Arc<BasedSpace>) -> Self {
        let n = space.dim();
        OperatorMatrix { domain: space.clone(), codomain: space, matrix: SparseMatrix::identity(n) }
    }

    pub fn zero(domain: Arc<BasedSpace>, codomain: Arc<BasedSpace>) -> Self {
        let m = SparseMatrix::zeros(codomain.dim(), domain.dim());
        OperatorMatrix { domain, codomain, matrix: m }
    }

    /// Builds from (row label, column label, value) entries.
    pub fn from_labeled(
        domain: Arc<BasedSpace>,
        codomain: Arc<BasedSpace>,
        entries: &[(&str, &str, Rational)],
    ) -> Result<Self> {
        let mut trips = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            trips.push((codomain.index_of(r)?, domain.index_of(c)?, v.clone()));
        }
        let m = SparseMatrix::from_triplets(codomain.dim(), domain.dim(), trips);
        Ok(OperatorMatrix { domain, codomain, matrix: m })
    }

    /// `self ∘ rhs`; requires `rhs.codomain` and `self.domain` to carry the same labels.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if !self.domain.same_labels(&rhs.codomain) {
            return Err(Error::SpaceMismatch("composition across different inner spaces".into()));
        }
        Ok(OperatorMatrix {
            domain: rhs.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&rhs.matrix),
        })
    }

    pub fn add(&self, rhs: &OperatorMatrix) -> Result<OperatorMatrix> {
        if !self.domain.same_labels(&rhs.domain) || !self.codomain.same_labels(&rhs.codomain) {
            return Err(Error::SpaceMismatch("sum of maps between different spaces".into()));
        }
        Ok(OperatorMatrix {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add(&rhs.matrix),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Labeled entries `(row label, column label, value)` in column-major order.
    pub fn labeled_entries(&self) -> Vec<(String, String, Rational)> {
        self.matrix
            .triplets()
            .into_iter()
            .map(|(i, j, v)| (self.codomain.label(i).to_string(), self.domain.label(j).to_string(), v))
            .collect()
    }
}

/// Linearly independent family of vectors in a based space.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub ambient: Arc<BasedSpace>,
    vectors: Vec<SparseVec>,
    solver: Arc<CoordinateSolver>,
}

impl SubspaceBasis {
    pub fn new(ambient: Arc<BasedSpace>, vectors: Vec<SparseVec>) -> Result<Self> {
        for v in &vectors {
            if v.dim() != ambient.dim() {
                return Err(Error::Dimension(format!("vector of dim {} in space of dim {}", v.dim(), ambient.dim())));
            }
        }
        let solver = CoordinateSolver::new(ambient.dim(), &vectors)
            .ok_or_else(|| Error::Dependent(format!("{} vectors", vectors.len())))?;
        Ok(SubspaceBasis { ambient, vectors, solver: Arc::new(solver) })
    }

    pub fn full(ambient: Arc<BasedSpace>) -> Self {
        let n = ambient.dim();
        Self::new(ambient, (0..n).map(|i| SparseVec::unit(n, i)).collect()).expect("unit vectors are independent")
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    /// Columns are the basis vectors.
    pub fn matrix(&self) -> &SparseMatrix {
        self.solver.basis_matrix()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.solver.coords(v).is_some()
    }

    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        self.solver.coords(v)
    }
}

/// Result of factoring a map into kernel and image.
#[derive(Clone, Debug)]
pub struct RankFactor {
    pub kernel: SubspaceBasis,
    pub image: SubspaceBasis,
    pub rank: usize,
}

pub fn rank_factor(a: &OperatorMatrix) -> RankFactor {
    let kernel = elim::kernel(&a.matrix);
    let image = elim::image(&a.matrix);
    let rank = image.len();
    assert_eq!(kernel.len() + rank, a.domain.dim(), "rank-nullity");
    RankFactor {
        kernel: SubspaceBasis::new(a.domain.clone(), kernel).expect("kernel basis independent"),
        image: SubspaceBasis::new(a.codomain.clone(), image).expect("image basis independent"),
        rank,
    }
}

pub fn solve_linear(a: &OperatorMatrix, b: &SparseVec) -> Result<Option<SparseVec>> {
    if b.dim() != a.codomain.dim() {
        return Err(Error::Dimension(format!("rhs of dim {} for codomain dim {}", b.dim(), a.codomain.dim())));
    }
    Ok(elim::solve(&a.matrix, b))
}

/// Inverse of `a` restricted to `span(s)`, as an `r × r` matrix in the coordinates of `s`.
pub fn invert_on_subspace(a: &OperatorMatrix, s: &SubspaceBasis) -> Result<SparseMatrix> {
    if !a.domain.same_labels(&s.ambient) || !a.codomain.same_labels(&s.ambient) {
        return Err(Error::SpaceMismatch("subspace ambient differs from operator spaces".into()));
    }
    let r = s.dim();
    let mut cols = Vec::with_capacity(r);
    for (j, v) in s.vectors().iter().enumerate() {
        let img = a.matrix.apply(v);
        cols.push(s.coords(&img).ok_or(Error::NotInvariant(j))?);
    }
    let m = SparseMatrix::from_columns(r, cols);
    elim::inverse(&m).map_err(|k| {
        let amb = s.matrix().apply(&k);
        Error::SingularRestriction(s.ambient.describe(&amb))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_labels_rejected() {
        assert!(BasedSpace::unweighted(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn compose_checks_inner_space() {
        let a = Arc::new(BasedSpace::numbered("a", 2));
        let b = Arc::new(BasedSpace::numbered("b", 2));
        let f = OperatorMatrix::identity(a.clone());
        let g = OperatorMatrix::identity(b.clone());
        assert!(f.compose(&g).is_err());
        assert!(f.compose(&f).is_ok());
    }

    #[test]
    fn invert_on_subspace_examples() {
        let s = Arc::new(BasedSpace::numbered("x", 3));
        let two = OperatorMatrix::new(s.clone(), s.clone(), SparseMatrix::scalar(3, &Rational::from_int(2))).unwrap();
        let full = SubspaceBasis::full(s.clone());
        let inv = invert_on_subspace(&two, &full).unwrap();
        assert_eq!(inv, SparseMatrix::scalar(3, &Rational::new(1, 2)));
        let proj = OperatorMatrix::new(
            s.clone(),
            s.clone(),
            SparseMatrix::from_triplets(3, 3, vec![(0, 0, Rational::one())]),
        )
        .unwrap();
        match invert_on_subspace(&proj, &full) {
            Err(Error::SingularRestriction(v)) => assert!(v.contains("x1")),
            other => panic!("expected singular restriction, got {other:?}"),
        }
    }
}
