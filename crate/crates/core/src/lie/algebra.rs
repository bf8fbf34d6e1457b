use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::elim::CoordinateSolver;
use crate::exact::{BasedSpace, Rational, SparseMatrix, SparseVec};

/// One structure constant: `[b_i, b_j]` has coefficient `value` on `b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Rational,
}

/// A Lie algebra given by a basis and validated structure constants.
#[derive(Clone, Debug)]
pub struct LieAlgebraData {
    basis: Arc<BasedSpace>,
    brackets: Vec<Vec<SparseVec>>,
    ad: Vec<SparseMatrix>,
    killing: Vec<Vec<Rational>>,
    defining: Option<Vec<SparseMatrix>>,
}

impl LieAlgebraData {
    pub fn basis(&self) -> &Arc<BasedSpace> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn label(&self, i: usize) -> &str {
        self.basis.label(i)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.basis.index_of(label)
    }

    /// `[b_i, b_j]` in basis coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero(self.dim());
        for (i, a) in u.entries() {
            for (j, b) in v.entries() {
                let c = a * b;
                acc = acc.axpy(&c, &self.brackets[*i][*j]);
            }
        }
        acc
    }

    /// Adjoint action matrix of `b_i`.
    pub fn ad(&self, i: usize) -> &SparseMatrix {
        &self.ad[i]
    }

    pub fn killing(&self, i: usize, j: usize) -> &Rational {
        &self.killing[i][j]
    }

    pub fn killing_vec(&self, u: &SparseVec, v: &SparseVec) -> Rational {
        let mut acc = Rational::zero();
        for (i, a) in u.entries() {
            for (j, b) in v.entries() {
                let k = &self.killing[*i][*j];
                if !k.is_zero() {
                    acc.add_mul(&(a * b), k);
                }
            }
        }
        acc
    }

    /// Matrices of a faithful defining representation, when the algebra was built from one.
    pub fn defining_matrices(&self) -> Option<&[SparseMatrix]> {
        self.defining.as_deref()
    }

    /// All structure constants, ordered by `(i, j, k)`.
    pub fn structure_constants(&self) -> Vec<StructureConstant> {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, v) in self.brackets[i][j].entries() {
                    out.push(StructureConstant { i, j, k: *k, value: v.clone() });
                }
            }
        }
        out
    }

    pub fn is_abelian_on(&self, idx: &[usize]) -> bool {
        idx.iter().all(|&i| idx.iter().all(|&j| self.brackets[i][j].is_zero()))
    }
}

/// Validates a full structure-constant table and assembles the algebra.
///
/// The table must list both `(i, j, k)` and `(j, i, k)` for every nonzero bracket.
pub fn build_lie_algebra(basis: BasedSpace, constants: &[StructureConstant]) -> Result<LieAlgebraData> {
    let n = basis.dim();
    let mut pairs: Vec<Vec<Vec<(usize, Rational)>>> = vec![vec![Vec::new(); n]; n];
    for c in constants {
        if c.i >= n || c.j >= n || c.k >= n {
            return Err(Error::Dimension(format!("structure constant index ({}, {}, {}) out of range", c.i, c.j, c.k)));
        }
        pairs[c.i][c.j].push((c.k, c.value.clone()));
    }
    let brackets: Vec<Vec<SparseVec>> = pairs
        .into_iter()
        .map(|row| row.into_iter().map(|p| SparseVec::from_pairs(n, p)).collect())
        .collect();
    for i in 0..n {
        for j in i..n {
            if brackets[i][j] != brackets[j][i].scale(&-Rational::one()) {
                return Err(Error::Antisymmetry(basis.label(i).into(), basis.label(j).into()));
            }
        }
    }
    let ad: Vec<SparseMatrix> = (0..n)
        .map(|i| SparseMatrix::from_columns(n, (0..n).map(|j| brackets[i][j].clone()).collect()))
        .collect();
    for i in 0..n {
        for j in (i + 1)..n {
            for l in (j + 1)..n {
                let a = ad[i].apply(&brackets[j][l]);
                let b = ad[j].apply(&brackets[l][i]);
                let c = ad[l].apply(&brackets[i][j]);
                if !a.add(&b).add(&c).is_zero() {
                    return Err(Error::Jacobi(basis.label(i).into(), basis.label(j).into(), basis.label(l).into()));
                }
            }
        }
    }
    let killing = (0..n)
        .map(|i| (0..n).map(|j| ad[i].mul(&ad[j]).trace()).collect())
        .collect();
    Ok(LieAlgebraData { basis: Arc::new(basis), brackets, ad, killing, defining: None })
}

/// Builds the algebra spanned by the given matrices, which must close under commutators.
pub fn from_matrix_basis(labels: Vec<String>, mats: Vec<SparseMatrix>) -> Result<LieAlgebraData> {
    let n = mats.len();
    let size = mats.first().map_or(0, |m| m.nrows());
    let flat = |m: &SparseMatrix| -> SparseVec {
        SparseVec::from_pairs(size * size, m.triplets().into_iter().map(|(i, j, v)| (i * size + j, v)).collect())
    };
    let flats: Vec<SparseVec> = mats.iter().map(flat).collect();
    let solver = CoordinateSolver::new(size * size, &flats)
        .ok_or_else(|| Error::Dependent("matrix basis of Lie algebra".into()))?;
    let mut constants = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = mats[i].commutator(&mats[j]);
            let coords = solver
                .coords(&flat(&c))
                .ok_or_else(|| Error::Invariant(format!("[{}, {}] leaves the span", labels[i], labels[j])))?;
            for (k, v) in coords.entries() {
                constants.push(StructureConstant { i, j, k: *k, value: v.clone() });
            }
        }
    }
    let basis = BasedSpace::unweighted(labels)?;
    let mut alg = build_lie_algebra(basis, &constants)?;
    alg.defining = Some(mats);
    Ok(alg)
}

impl LieAlgebraData {
    /// Replaces basis weights, keeping labels and brackets.
    pub(crate) fn with_weights(mut self, weights: Vec<Rational>) -> Result<Self> {
        self.basis = Arc::new(BasedSpace::new(self.basis.labels().to_vec(), weights)?);
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(i: usize, j: usize, k: usize, v: i64) -> Vec<StructureConstant> {
        vec![
            StructureConstant { i, j, k, value: Rational::from_int(v) },
            StructureConstant { i: j, j: i, k, value: Rational::from_int(-v) },
        ]
    }

    fn sl2() -> Vec<StructureConstant> {
        let (h, e, f) = (0, 1, 2);
        [sc(h, e, e, 2), sc(h, f, f, -2), sc(e, f, h, 1)].concat()
    }

    #[test]
    fn abelian_has_zero_killing() {
        let alg = build_lie_algebra(BasedSpace::numbered("a", 3), &[]).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| alg.killing(i, j).is_zero())));
    }

    #[test]
    fn sl2_killing() {
        let basis = BasedSpace::unweighted(vec!["h".into(), "e".into(), "f".into()]).unwrap();
        let alg = build_lie_algebra(basis, &sl2()).unwrap();
        assert_eq!(*alg.killing(0, 0), Rational::from_int(8));
        assert_eq!(*alg.killing(1, 2), Rational::from_int(4));
    }

    #[test]
    fn antisymmetry_violation_named() {
        let basis = BasedSpace::unweighted(vec!["h".into(), "e".into(), "f".into()]).unwrap();
        let mut c = sl2();
        c.pop();
        match build_lie_algebra(basis, &c) {
            Err(Error::Antisymmetry(a, b)) => assert_eq!((a.as_str(), b.as_str()), ("e", "f")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn jacobi_violation_named() {
        let basis = BasedSpace::unweighted(vec!["h".into(), "e".into(), "f".into()]).unwrap();
        let c = [sc(0, 1, 1, 2), sc(0, 2, 2, -2), sc(1, 2, 0, 1), sc(1, 2, 1, 1)].concat();
        assert!(matches!(build_lie_algebra(basis, &c), Err(Error::Jacobi(..))));
    }
}
