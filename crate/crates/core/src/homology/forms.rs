use std::collections::HashMap;

use crate::exact::{Rational, SparseMatrix};
use crate::lie::subsets;

/// Exterior algebra `Λ m*` on `n` generators `ε^0, ..., ε^{n-1}`.
///
/// `Λ^k` has the basis `ε^I = ε^{i_1} ∧ ... ∧ ε^{i_k}` over strictly increasing
/// `I`, in lexicographic order. Interior products are derivations,
/// `e_i ⌐ ε^I = Σ_p (-1)^p δ(i, i_p) ε^{I \ i_p}` with `p` counted from 0.
#[derive(Clone, Debug)]
pub struct FormTables {
    n: usize,
    subsets: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    wedge: Vec<Vec<SparseMatrix>>,
    interior: Vec<Vec<SparseMatrix>>,
}

impl FormTables {
    pub fn new(n: usize) -> Self {
        let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| subsets(n, k)).collect();
        let index: Vec<HashMap<Vec<usize>, usize>> = subsets
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, x)| (x.clone(), i)).collect())
            .collect();
        let mut wedge = Vec::with_capacity(n + 1);
        let mut interior = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let dk = subsets[k].len();
            let mut wk = Vec::with_capacity(n);
            let mut ik = Vec::with_capacity(n);
            for i in 0..n {
                let mut wt = Vec::new();
                let mut it = Vec::new();
                for (col, s) in subsets[k].iter().enumerate() {
                    if k < n && !s.contains(&i) {
                        let before = s.iter().filter(|&&x| x < i).count();
                        let mut t = s.clone();
                        t.insert(before, i);
                        let sign = if before % 2 == 0 { 1 } else { -1 };
                        wt.push((index[k + 1][&t], col, Rational::from_int(sign)));
                    }
                    if let Some(p) = s.iter().position(|&x| x == i) {
                        let mut t = s.clone();
                        t.remove(p);
                        let sign = if p % 2 == 0 { 1 } else { -1 };
                        it.push((index[k - 1][&t], col, Rational::from_int(sign)));
                    }
                }
                let up = if k < n { subsets[k + 1].len() } else { 0 };
                let down = if k > 0 { subsets[k - 1].len() } else { 0 };
                wk.push(SparseMatrix::from_triplets(up, dk, wt));
                ik.push(SparseMatrix::from_triplets(down, dk, it));
            }
            wedge.push(wk);
            interior.push(ik);
        }
        FormTables { n, subsets, index, wedge, interior }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, k: usize) -> usize {
        self.subsets[k].len()
    }

    pub fn subsets(&self, k: usize) -> &[Vec<usize>] {
        &self.subsets[k]
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s.len())?.get(s).copied()
    }

    /// `ε^i ∧ · : Λ^k → Λ^{k+1}` (zero rows when `k = n`).
    pub fn wedge(&self, k: usize, i: usize) -> &SparseMatrix {
        &self.wedge[k][i]
    }

    /// `e_i ⌐ · : Λ^k → Λ^{k-1}` (zero rows when `k = 0`).
    pub fn interior(&self, k: usize, i: usize) -> &SparseMatrix {
        &self.interior[k][i]
    }

    /// Wedge of basis forms `ε^I ∧ ε^J` as `(sign, index of I ∪ J)`.
    pub fn wedge_basis(&self, k: usize, a: usize, l: usize, b: usize) -> Option<(i64, usize)> {
        let mut t: Vec<usize> = self.subsets[k][a].iter().chain(&self.subsets[l][b]).copied().collect();
        let sign = crate::lie::sort_with_sign(&mut t)?;
        Some((sign, self.index[k + l][&t]))
    }

    /// Contraction `ε^J ⌐ e_I` of a basis `l`-form into a basis `k`-vector with `l ≤ k`:
    /// interior products `e_{j_1} ⌐ ... ⌐ e_{j_l}` applied in the order `j_l` first.
    pub fn contract_basis(&self, l: usize, b: usize, k: usize, a: usize) -> Option<(i64, usize)> {
        let mut cur: Vec<usize> = self.subsets[k][a].clone();
        let mut sign = 1;
        for &j in self.subsets[l][b].iter().rev() {
            let p = cur.iter().position(|&x| x == j)?;
            if p % 2 == 1 {
                sign = -sign;
            }
            cur.remove(p);
        }
        Some((sign, self.index[k - l][&cur]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_interior_relations() {
        let t = FormTables::new(4);
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let a = t.wedge(k + 1, j).mul(t.wedge(k, i));
                    let b = t.wedge(k + 1, i).mul(t.wedge(k, j));
                    assert!(a.add(&b).is_zero());
                }
            }
        }
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    let lhs = t.interior(k + 1, i).mul(t.wedge(k, j));
                    let rhs = if k > 0 { t.wedge(k - 1, j).mul(t.interior(k, i)) } else { SparseMatrix::zeros(t.dim(k), t.dim(k)) };
                    let sum = lhs.add(&rhs);
                    let want = if i == j { SparseMatrix::identity(t.dim(k)) } else { SparseMatrix::zeros(t.dim(k), t.dim(k)) };
                    assert_eq!(sum, want, "k={k} i={i} j={j}");
                }
            }
        }
    }
}
