use std::collections::BTreeMap;

use super::LieAlgebraData;
use crate::error::{Error, Result};
use crate::exact::{elim, Rational, SparseMatrix, SparseVec};

/// Grading of `g = m* ⊕ g0 ⊕ m` by the eigenvalues of `ad(E)`.
///
/// `m` is spanned by the positive-weight basis vectors `e_i`; the dual vectors
/// `ε^i` are combinations of negative-weight basis vectors with
/// `B(ε^i, e_j) = δ_ij` for the Killing form `B`.
#[derive(Clone, Debug)]
pub struct ParabolicGrading {
    grading_element: SparseVec,
    weights: Vec<Rational>,
    layers: BTreeMap<Rational, Vec<usize>>,
    m_basis: Vec<usize>,
    m_dual: Vec<SparseVec>,
    g0: Vec<usize>,
    negative: Vec<usize>,
    p_basis: Vec<usize>,
    /// `pair[a][j] = B(b_a, e_j)` for every basis vector `b_a`.
    pair: Vec<Vec<Rational>>,
    abelian: bool,
}

impl ParabolicGrading {
    pub fn new(alg: &LieAlgebraData, grading_element: SparseVec) -> Result<Self> {
        let n = alg.dim();
        if grading_element.dim() != n {
            return Err(Error::Dimension("grading element coordinates".into()));
        }
        let mut ad_e = SparseMatrix::zeros(n, n);
        for (i, c) in grading_element.entries() {
            ad_e = ad_e.axpy(c, alg.ad(*i));
        }
        if !ad_e.is_diagonal() {
            return Err(Error::Grading("ad(E) is not diagonal on the basis".into()));
        }
        let weights: Vec<Rational> = (0..n).map(|i| ad_e.get(i, i)).collect();
        let mut layers: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for (i, w) in weights.iter().enumerate() {
            layers.entry(w.clone()).or_default().push(i);
        }
        for i in 0..n {
            for j in 0..n {
                let target = &weights[i] + &weights[j];
                for (k, _) in alg.bracket_basis(i, j).entries() {
                    if weights[*k] != target {
                        return Err(Error::Grading(format!(
                            "[{}, {}] has a component on {} outside layer {target}",
                            alg.label(i),
                            alg.label(j),
                            alg.label(*k)
                        )));
                    }
                }
            }
        }
        let zero = Rational::zero();
        let mut m_basis: Vec<usize> = (0..n).filter(|&i| weights[i] > zero).collect();
        m_basis.sort_by(|&a, &b| weights[a].cmp(&weights[b]).then(a.cmp(&b)));
        let mut negative: Vec<usize> = (0..n).filter(|&i| weights[i] < zero).collect();
        negative.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
        let g0: Vec<usize> = (0..n).filter(|&i| weights[i].is_zero()).collect();
        if m_basis.len() != negative.len() {
            return Err(Error::Grading(format!(
                "{} positive but {} negative basis vectors",
                m_basis.len(),
                negative.len()
            )));
        }
        let mut p_basis: Vec<usize> = (0..n).filter(|&i| weights[i] <= zero).collect();
        p_basis.sort();
        let pair: Vec<Vec<Rational>> =
            (0..n).map(|a| m_basis.iter().map(|&j| alg.killing(a, j).clone()).collect()).collect();
        let r = m_basis.len();
        let kmat = SparseMatrix::from_dense(&negative.iter().map(|&a| pair[a].clone()).collect::<Vec<_>>());
        let inv = if r == 0 {
            SparseMatrix::zeros(0, 0)
        } else {
            elim::inverse(&kmat).map_err(|_| Error::Grading("Killing form degenerate on m* x m".into()))?
        };
        let m_dual: Vec<SparseVec> = (0..r)
            .map(|i| {
                SparseVec::from_pairs(
                    n,
                    (0..r).map(|a| (negative[a], inv.get(i, a))).filter(|(_, v)| !v.is_zero()).collect(),
                )
            })
            .collect();
        let abelian = alg.is_abelian_on(&m_basis);
        let grading = ParabolicGrading {
            grading_element,
            weights,
            layers,
            m_basis,
            m_dual,
            g0,
            negative,
            p_basis,
            pair,
            abelian,
        };
        for i in 0..r {
            for j in 0..r {
                let want = if i == j { Rational::one() } else { Rational::zero() };
                if grading.pair_with_m(&grading.m_dual[i], j) != want {
                    return Err(Error::Invariant("dual basis pairing".into()));
                }
            }
        }
        Ok(grading)
    }

    pub fn grading_element(&self) -> &SparseVec {
        &self.grading_element
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn layers(&self) -> &BTreeMap<Rational, Vec<usize>> {
        &self.layers
    }

    /// Dimension of `m`.
    pub fn n(&self) -> usize {
        self.m_basis.len()
    }

    /// Basis indices of `e_1, ..., e_n`, ordered by weight.
    pub fn m_basis(&self) -> &[usize] {
        &self.m_basis
    }

    /// `ε^1, ..., ε^n` as vectors of `g`.
    pub fn m_dual(&self) -> &[SparseVec] {
        &self.m_dual
    }

    pub fn g0_basis(&self) -> &[usize] {
        &self.g0
    }

    pub fn negative_basis(&self) -> &[usize] {
        &self.negative
    }

    pub fn p_basis(&self) -> &[usize] {
        &self.p_basis
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Maximal weight `k` of the grading (`|k|`-graded).
    pub fn depth(&self) -> Rational {
        self.m_basis.last().map_or(Rational::zero(), |&i| self.weights[i].clone())
    }

    /// `B(v, e_j)`.
    pub fn pair_with_m(&self, v: &SparseVec, j: usize) -> Rational {
        let mut acc = Rational::zero();
        for (a, c) in v.entries() {
            let p = &self.pair[*a][j];
            if !p.is_zero() {
                acc.add_mul(c, p);
            }
        }
        acc
    }

    /// Coordinates of the `m*`-component of `v` in the basis `ε^i`.
    pub fn m_star_coords(&self, v: &SparseVec) -> SparseVec {
        let n = self.n();
        SparseVec::from_pairs(n, (0..n).map(|j| (j, self.pair_with_m(v, j))).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Coordinates of the `m`-component of `v` in the basis `e_i`.
    pub fn m_coords(&self, v: &SparseVec) -> SparseVec {
        let n = self.n();
        SparseVec::from_pairs(
            n,
            self.m_basis.iter().enumerate().map(|(i, &b)| (i, v.get(b))).filter(|(_, c)| !c.is_zero()).collect(),
        )
    }

    /// Weight of `ε^i` (the negative of the weight of `e_i`).
    pub fn dual_weight(&self, i: usize) -> Rational {
        -&self.weights[self.m_basis[i]]
    }

    /// True when `v` lies in `p = g0 ⊕ m*`.
    pub fn in_p(&self, v: &SparseVec) -> bool {
        v.entries().iter().all(|(i, _)| self.weights[*i] <= Rational::zero())
    }
}
