use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{Rational, SparseMatrix};
use crate::lie::{dual, tensor, trivial, GradedAlgebra, RepresentationData};

/// A g-equivariant bilinear map `W₁ ⊗ W₂ → W₃`, stored as a `dim W₃ × (dim W₁ · dim W₂)`
/// matrix with column index `i · dim W₂ + j`.
#[derive(Clone, Debug)]
pub struct PairingData {
    pub source1: Arc<RepresentationData>,
    pub source2: Arc<RepresentationData>,
    pub target: Arc<RepresentationData>,
    pub map: SparseMatrix,
}

impl PairingData {
    /// Validates dimensions and `P(ρ₁(x)⊗1 + 1⊗ρ₂(x)) = ρ₃(x)P` for every basis `x` of g.
    pub fn new(
        source1: Arc<RepresentationData>,
        source2: Arc<RepresentationData>,
        target: Arc<RepresentationData>,
        map: SparseMatrix,
        ga: &GradedAlgebra,
    ) -> Result<Self> {
        let (d1, d2) = (source1.dim(), source2.dim());
        if map.nrows() != target.dim() || map.ncols() != d1 * d2 {
            return Err(Error::Dimension(format!(
                "pairing matrix {}×{} for {}⊗{}→{}",
                map.nrows(),
                map.ncols(),
                d1,
                d2,
                target.dim()
            )));
        }
        let (i1, i2) = (SparseMatrix::identity(d1), SparseMatrix::identity(d2));
        for x in 0..ga.algebra.dim() {
            let (r1, r2, r3) = (source1.action(x)?, source2.action(x)?, target.action(x)?);
            let lhs = map.mul(&r1.kron(&i2).add(&i1.kron(r2)));
            if lhs != r3.mul(&map) {
                return Err(Error::Equivariance(format!(
                    "pairing {}⊗{}→{} fails for {}",
                    source1.name(),
                    source2.name(),
                    target.name(),
                    ga.algebra.label(x)
                )));
            }
        }
        Ok(PairingData { source1, source2, target, map })
    }

    /// `W₁ ⊗ W₂ → tensor(W₁, W₂)`, the identity on the tensor basis.
    pub fn tensor(w1: Arc<RepresentationData>, w2: Arc<RepresentationData>, ga: &GradedAlgebra) -> Result<Self> {
        let target = Arc::new(tensor(&w1, &w2, ga)?);
        let map = SparseMatrix::identity(target.dim());
        Self::new(w1, w2, target, map, ga)
    }

    /// Pairing into a given target whose basis is the tensor basis of the sources, as for
    /// `tensor(V,V) ⊗ V → tensor(V, tensor(V,V))`.
    pub fn reassociate(
        w1: Arc<RepresentationData>,
        w2: Arc<RepresentationData>,
        target: Arc<RepresentationData>,
        ga: &GradedAlgebra,
    ) -> Result<Self> {
        let map = SparseMatrix::identity(w1.dim() * w2.dim());
        Self::new(w1, w2, target, map, ga)
    }

    /// Lie bracket `g ⊗ g → g` on the adjoint representation.
    pub fn bracket(adjoint: Arc<RepresentationData>, ga: &GradedAlgebra) -> Result<Self> {
        let g = &ga.algebra;
        let n = g.dim();
        let mut trips = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for (c, v) in g.bracket_basis(a, b).entries() {
                    trips.push((*c, a * n + b, v.clone()));
                }
            }
        }
        let map = SparseMatrix::from_triplets(n, n * n, trips);
        Self::new(adjoint.clone(), adjoint.clone(), adjoint, map, ga)
    }

    /// Composition on `End(V) = tensor(V, dual(V))`, basis `v_i ⊗ v_j*` read as `E_ij`.
    pub fn composition(end: Arc<RepresentationData>, v_dim: usize, ga: &GradedAlgebra) -> Result<Self> {
        let d = v_dim;
        if end.dim() != d * d {
            return Err(Error::Dimension(format!("End(V) of dimension {} for dim V = {d}", end.dim())));
        }
        let mut trips = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    // E_ij E_jl = E_il
                    trips.push((i * d + l, (i * d + j) * d * d + (j * d + l), Rational::one()));
                }
            }
        }
        let map = SparseMatrix::from_triplets(d * d, d * d * d * d, trips);
        Self::new(end.clone(), end.clone(), end, map, ga)
    }

    /// Evaluation `W ⊗ W* → ℝ`.
    pub fn evaluation(w: Arc<RepresentationData>, ga: &GradedAlgebra) -> Result<Self> {
        let wd = Arc::new(dual(&w, ga)?);
        let one = Arc::new(trivial(ga)?);
        let d = w.dim();
        let trips = (0..d).map(|i| (0, i * d + i, Rational::one())).collect();
        Self::new(w, wd, one, SparseMatrix::from_triplets(1, d * d, trips), ga)
    }
}
