use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{BasedSpace, Rational, SparseVec};

/// Monomials `x^α` in `n` variables of total degree `≤ D`, graded-lex ordered.
///
/// Degree-`d` monomials come before degree-`d+1` ones, so the monomials of degree `≤ d`
/// form a prefix of the basis. Within a degree the order is reverse lexicographic on
/// exponent vectors (`x1^2` before `x1 x2` before `x2^2`).
pub struct MonomialBasis {
    n: usize,
    max_degree: usize,
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    degree_end: Vec<usize>,
    /// `mul[a * len + b]`: index of `x^a x^b`, if its degree is in range.
    mul: Vec<Option<u32>>,
    /// `derive[m * len + a]`: `∂^a x^m = c x^t` as `(t, c)`.
    derive: Vec<Option<(u32, i64)>>,
}

impl fmt::Debug for MonomialBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialBasis(n = {}, D = {})", self.n, self.max_degree)
    }
}

impl PartialEq for MonomialBasis {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.max_degree == other.max_degree
    }
}

impl Eq for MonomialBasis {}

fn compositions(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == n {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=d).rev() {
        prefix.push(first);
        compositions(n, d - first, prefix, out);
        prefix.pop();
    }
}

fn falling(m: u32, a: u32) -> i64 {
    (0..a).map(|i| (m - i) as i64).product()
}

impl MonomialBasis {
    pub fn new(n: usize, max_degree: usize) -> Self {
        let mut exps = Vec::new();
        let mut degree_end = Vec::new();
        for d in 0..=max_degree {
            if n == 0 {
                if d == 0 {
                    exps.push(Vec::new());
                }
            } else {
                compositions(n, d as u32, &mut Vec::new(), &mut exps);
            }
            degree_end.push(exps.len());
        }
        let index: HashMap<Vec<u32>, usize> = exps.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let len = exps.len();
        let mut mul = vec![None; len * len];
        let mut derive = vec![None; len * len];
        for (a, ea) in exps.iter().enumerate() {
            for (b, eb) in exps.iter().enumerate() {
                let sum: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                mul[a * len + b] = index.get(&sum).map(|&i| i as u32);
                if ea.iter().zip(eb).all(|(m, a)| m >= a) {
                    let diff: Vec<u32> = ea.iter().zip(eb).map(|(m, a)| m - a).collect();
                    let c = ea.iter().zip(eb).map(|(&m, &a)| falling(m, a)).product();
                    derive[a * len + b] = Some((index[&diff] as u32, c));
                }
            }
        }
        MonomialBasis { n, max_degree, exps, index, degree_end, mul, derive }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self, i: usize) -> &[u32] {
        &self.exps[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.exps[i].iter().sum::<u32>() as usize
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Number of monomials of degree `≤ d`.
    pub fn count_upto(&self, d: usize) -> usize {
        self.degree_end[d.min(self.max_degree)]
    }

    /// Index of the coordinate `x_i`.
    pub fn variable(&self, i: usize) -> usize {
        let mut e = vec![0; self.n];
        e[i] = 1;
        self.index[&e]
    }

    /// `x^a · x^b`, or `None` past the degree cutoff.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.mul[a * self.len() + b].map(|i| i as usize)
    }

    /// `∂^a x^m = c · x^t`, returned as `(t, c)`; `None` when it vanishes.
    pub fn derive(&self, m: usize, a: usize) -> Option<(usize, i64)> {
        self.derive[m * self.len() + a].map(|(t, c)| (t as usize, c))
    }

    /// `α!` for the multi-index of monomial `a`.
    pub fn factorial(&self, a: usize) -> i64 {
        self.exps[a].iter().map(|&e| falling(e, e)).product()
    }

    pub fn label(&self, i: usize) -> String {
        let mut s = String::new();
        for (v, &e) in self.exps[i].iter().enumerate() {
            match e {
                0 => {}
                1 => s.push_str(&format!("x{}", v + 1)),
                _ => s.push_str(&format!("x{}^{}", v + 1, e)),
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// Polynomial sections `ℝ[x_1..x_n]_{≤D} ⊗ F` of a fiber `F`.
///
/// Basis index `monomial · dim F + fiber`. The weight of `x^α ⊗ f` is `weight(f) − |α|`,
/// which makes every flat operator weight-preserving.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySectionSpace {
    mono: Arc<MonomialBasis>,
    fiber: Arc<BasedSpace>,
}

impl PolySectionSpace {
    pub fn new(mono: Arc<MonomialBasis>, fiber: Arc<BasedSpace>) -> Self {
        PolySectionSpace { mono, fiber }
    }

    pub fn monomials(&self) -> &Arc<MonomialBasis> {
        &self.mono
    }

    pub fn fiber(&self) -> &Arc<BasedSpace> {
        &self.fiber
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber.dim()
    }

    pub fn n_vars(&self) -> usize {
        self.mono.n()
    }

    pub fn max_degree(&self) -> usize {
        self.mono.max_degree()
    }

    pub fn dim(&self) -> usize {
        self.mono.len() * self.fiber.dim()
    }

    pub fn index(&self, monomial: usize, fiber: usize) -> usize {
        monomial * self.fiber.dim() + fiber
    }

    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.fiber.dim(), idx % self.fiber.dim())
    }

    pub fn weight(&self, idx: usize) -> Rational {
        let (m, f) = self.split(idx);
        self.fiber.weight(f) - Rational::from_int(self.mono.degree(m) as i64)
    }

    pub fn label(&self, idx: usize) -> String {
        let (m, f) = self.split(idx);
        format!("{}·{}", self.mono.label(m), self.fiber.label(f))
    }

    /// The section basis as a labelled, weighted space.
    pub fn based_space(&self) -> BasedSpace {
        let labels = (0..self.dim()).map(|i| self.label(i)).collect();
        let weights = (0..self.dim()).map(|i| self.weight(i)).collect();
        BasedSpace::new(labels, weights).expect("section labels are distinct")
    }

    /// Constant section with fiber value `v`.
    pub fn constant(&self, v: &SparseVec) -> SparseVec {
        self.times_monomial(0, v)
    }

    /// `x^m ⊗ v`.
    pub fn times_monomial(&self, m: usize, v: &SparseVec) -> SparseVec {
        let f = self.fiber.dim();
        SparseVec::from_pairs(self.dim(), v.entries().iter().map(|(i, c)| (m * f + i, c.clone())).collect())
    }

    /// Section from `(exponents, fiber label, coefficient)` triples.
    pub fn section(&self, terms: &[(Vec<u32>, String, Rational)]) -> Result<SparseVec> {
        let mut pairs = Vec::with_capacity(terms.len());
        for (e, label, c) in terms {
            if e.len() != self.n_vars() {
                return Err(Error::Dimension(format!("exponent vector {e:?} for {} variables", self.n_vars())));
            }
            let m = self.mono.index_of(e).ok_or(Error::DegreeOverflow {
                got: e.iter().sum::<u32>() as usize,
                max: self.max_degree(),
            })?;
            pairs.push((self.index(m, self.fiber.index_of(label)?), c.clone()));
        }
        Ok(SparseVec::from_pairs(self.dim(), pairs))
    }

    /// Inverse of [`PolySectionSpace::section`].
    pub fn terms(&self, v: &SparseVec) -> Vec<(Vec<u32>, String, Rational)> {
        v.entries()
            .iter()
            .map(|(i, c)| {
                let (m, f) = self.split(*i);
                (self.mono.exponents(m).to_vec(), self.fiber.label(f).to_string(), c.clone())
            })
            .collect()
    }

    /// Same fiber over a different degree cutoff.
    pub fn with_monomials(&self, mono: Arc<MonomialBasis>) -> Self {
        PolySectionSpace { mono, fiber: self.fiber.clone() }
    }

    pub fn with_fiber(&self, fiber: Arc<BasedSpace>) -> Self {
        PolySectionSpace { mono: self.mono.clone(), fiber }
    }

    /// Highest polynomial degree occurring in `v`.
    pub fn degree_of(&self, v: &SparseVec) -> Option<usize> {
        v.entries().iter().map(|(i, _)| self.mono.degree(self.split(*i).0)).max()
    }

    /// Fiber values of `v` per monomial, in monomial order.
    pub fn blocks(&self, v: &SparseVec) -> Vec<(usize, SparseVec)> {
        let f = self.fiber.dim();
        let mut out: Vec<(usize, Vec<(usize, Rational)>)> = Vec::new();
        for (i, c) in v.entries() {
            let (m, j) = (i / f, i % f);
            match out.last_mut() {
                Some((last, pairs)) if *last == m => pairs.push((j, c.clone())),
                _ => out.push((m, vec![(j, c.clone())])),
            }
        }
        out.into_iter().map(|(m, p)| (m, SparseVec::from_pairs(f, p))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let m = MonomialBasis::new(3, 2);
        assert_eq!(m.len(), 10);
        assert_eq!(m.count_upto(1), 4);
        assert_eq!(m.exponents(1), &[1, 0, 0]);
        assert_eq!(m.exponents(4), &[2, 0, 0]);
        assert_eq!(m.exponents(9), &[0, 0, 2]);
        assert_eq!(MonomialBasis::new(2, 3).len(), 10);
        assert_eq!(MonomialBasis::new(0, 3).len(), 1);
    }

    #[test]
    fn derivative_table() {
        let m = MonomialBasis::new(2, 4);
        let x1_3x2 = m.index_of(&[3, 1]).unwrap();
        let a = m.index_of(&[2, 1]).unwrap();
        assert_eq!(m.derive(x1_3x2, a), Some((m.index_of(&[1, 0]).unwrap(), 6)));
        assert_eq!(m.derive(a, x1_3x2), None);
        assert_eq!(m.mul(x1_3x2, a), None);
        assert_eq!(m.factorial(x1_3x2), 6);
        assert_eq!(m.label(x1_3x2), "x1^3x2");
    }

    #[test]
    fn section_space_dims() {
        let fiber = Arc::new(BasedSpace::numbered("w", 5));
        let s = PolySectionSpace::new(Arc::new(MonomialBasis::new(3, 2)), fiber.clone());
        assert_eq!(s.dim(), 50);
        let s0 = PolySectionSpace::new(Arc::new(MonomialBasis::new(3, 0)), fiber);
        assert_eq!(s0.dim(), 5);
        assert_eq!(s.weight(s.index(4, 0)), Rational::from_int(-2));
    }
}
