use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{Rational, SparseVec};
use crate::flat::PolySectionSpace;

/// Seeded sampler of polynomial sections with small rational coefficients.
pub struct SectionSampler {
    rng: ChaCha8Rng,
}

impl SectionSampler {
    pub fn new(seed: u64) -> Self {
        SectionSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Coefficient with numerator in `−3..=3` and denominator in `1..=3`.
    pub fn coefficient(&mut self) -> Rational {
        let num: i64 = self.rng.gen_range(-3..=3);
        let den: i64 = self.rng.gen_range(1..=3);
        Rational::new(num, den)
    }

    /// Dense random section supported in polynomial degree `≤ max_deg`.
    pub fn section(&mut self, space: &PolySectionSpace, max_deg: usize) -> SparseVec {
        let len = space.monomials().count_upto(max_deg.min(space.max_degree())) * space.fiber_dim();
        let pairs = (0..len).map(|i| (i, self.coefficient())).collect();
        SparseVec::from_pairs(space.dim(), pairs)
    }

    /// Section with at most `terms` nonzero entries.
    pub fn sparse_section(&mut self, space: &PolySectionSpace, max_deg: usize, terms: usize) -> SparseVec {
        let len = space.monomials().count_upto(max_deg.min(space.max_degree())) * space.fiber_dim();
        if len == 0 {
            return SparseVec::zero(space.dim());
        }
        let pairs = (0..terms).map(|_| (self.rng.gen_range(0..len), self.coefficient())).collect();
        SparseVec::from_pairs(space.dim(), pairs)
    }
}
