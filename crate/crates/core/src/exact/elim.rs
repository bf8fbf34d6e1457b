//! Deterministic sparse Gauss–Jordan elimination.
//!
//! Every routine reduces to the reduced row echelon form of some row set. That
//! form is unique, so bases derived from it do not depend on row order.

use super::{Rational, SparseMatrix, SparseVec};

/// Reduced row echelon form of a set of rows.
#[derive(Clone, Debug)]
pub struct Rref {
    pub ncols: usize,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    /// Rows with a leading 1 at the pivot and zeros in every other pivot column.
    pub rows: Vec<SparseVec>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space of the row set, one vector per free column.
    pub fn null_space(&self) -> Vec<SparseVec> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut per_free: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            let p = self.pivots[r];
            for (j, v) in row.entries() {
                if *j != p {
                    per_free[*j].push((p, -v));
                }
            }
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut e = std::mem::take(&mut per_free[f]);
                e.push((f, Rational::one()));
                SparseVec::from_pairs(self.ncols, e)
            })
            .collect()
    }
}

fn reduce_against(w: &mut SparseVec, pivot_of: &[Option<usize>], basis: &[SparseVec], min_col: usize) {
    let mut p = 0;
    while p < w.nnz() {
        let (j, c) = {
            let e = &w.entries()[p];
            (e.0, e.1.clone())
        };
        if j >= min_col {
            if let Some(r) = pivot_of[j] {
                *w = w.axpy(&-c, &basis[r]);
                continue;
            }
        }
        p += 1;
    }
}

/// Reduced row echelon form of `rows`, each of dimension `ncols`.
pub fn rref(ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Rref {
    let mut pivot_of: Vec<Option<usize>> = vec![None; ncols];
    let mut basis: Vec<SparseVec> = Vec::new();
    let mut lead: Vec<usize> = Vec::new();
    for row in rows {
        assert_eq!(row.dim(), ncols, "row dimension mismatch");
        let mut w = row;
        reduce_against(&mut w, &pivot_of, &basis, 0);
        if let Some((j, c)) = w.leading() {
            let inv = c.recip();
            let w = w.scale(&inv);
            pivot_of[j] = Some(basis.len());
            basis.push(w);
            lead.push(j);
        }
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&r| std::cmp::Reverse(lead[r]));
    for &r in &order {
        let mut w = std::mem::take(&mut basis[r]);
        reduce_against(&mut w, &pivot_of, &basis, lead[r] + 1);
        basis[r] = w;
    }
    order.reverse();
    let pivots = order.iter().map(|&r| lead[r]).collect();
    let rows = order.into_iter().map(|r| std::mem::take(&mut basis[r])).collect();
    Rref { ncols, pivots, rows }
}

pub fn rref_of_rows(a: &SparseMatrix) -> Rref {
    rref(a.ncols(), a.rows())
}

pub fn rank(a: &SparseMatrix) -> usize {
    if a.nrows() <= a.ncols() {
        rref_of_rows(a).rank()
    } else {
        rref(a.nrows(), a.columns()).rank()
    }
}

/// Basis of `{x : A x = 0}`.
pub fn kernel(a: &SparseMatrix) -> Vec<SparseVec> {
    rref_of_rows(a).null_space()
}

/// Canonical (reduced echelon) basis of the column space of `A`.
pub fn image(a: &SparseMatrix) -> Vec<SparseVec> {
    rref(a.nrows(), a.columns()).rows
}

/// Some `x` with `A x = b`, pivot-ordered with free variables set to zero.
pub fn solve(a: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    assert_eq!(b.dim(), a.nrows(), "right-hand side dimension mismatch");
    let n = a.ncols();
    let aug = a.hstack(&SparseMatrix::from_columns(a.nrows(), vec![b.clone()]));
    let red = rref_of_rows(&aug);
    if red.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = Vec::new();
    for (r, row) in red.rows.iter().enumerate() {
        let v = row.get(n);
        if !v.is_zero() {
            x.push((red.pivots[r], v));
        }
    }
    Some(SparseVec::from_pairs(n, x))
}

/// Inverse of a square matrix, or a nonzero kernel vector when singular.
pub fn inverse(a: &SparseMatrix) -> Result<SparseMatrix, SparseVec> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "inverse of a non-square matrix");
    if n == 0 {
        return Ok(SparseMatrix::zeros(0, 0));
    }
    let aug = a.hstack(&SparseMatrix::identity(n));
    let red = rref_of_rows(&aug);
    if red.rank() < n || red.pivots[n - 1] != n - 1 {
        let k = kernel(a);
        return Err(k.into_iter().next().expect("singular matrix has a kernel vector"));
    }
    let rows: Vec<SparseVec> = red
        .rows
        .iter()
        .map(|row| {
            let e = row
                .entries()
                .iter()
                .filter(|(j, _)| *j >= n)
                .map(|(j, v)| (j - n, v.clone()))
                .collect();
            SparseVec::from_pairs(n, e)
        })
        .collect();
    Ok(SparseMatrix::from_rows(n, &rows))
}

/// Solver for coordinates of vectors in a fixed independent family.
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    basis: SparseMatrix,
    pivot_rows: Vec<usize>,
    inv: SparseMatrix,
}

impl CoordinateSolver {
    /// `None` when the vectors are dependent.
    pub fn new(dim: usize, vectors: &[SparseVec]) -> Option<Self> {
        let basis = SparseMatrix::from_columns(dim, vectors.to_vec());
        let red = rref(dim, vectors.iter().cloned());
        if red.rank() < vectors.len() {
            return None;
        }
        let pivot_rows = red.pivots.clone();
        let rows = basis.transpose().select_columns(&pivot_rows).transpose();
        let inv = inverse(&rows).ok()?;
        Some(CoordinateSolver { basis, pivot_rows, inv })
    }

    pub fn len(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates `c` with `Σ c_j v_j = v`, or `None` when `v` is outside the span.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let c = self.coords_unchecked(v);
        if self.basis.apply(&c) == *v {
            Some(c)
        } else {
            None
        }
    }

    /// Coordinates assuming membership; only the pivot rows of `v` are read.
    pub fn coords_unchecked(&self, v: &SparseVec) -> SparseVec {
        let picked = SparseVec::from_pairs(
            self.pivot_rows.len(),
            self.pivot_rows
                .iter()
                .enumerate()
                .filter_map(|(k, &r)| {
                    let x = v.get(r);
                    (!x.is_zero()).then_some((k, x))
                })
                .collect(),
        );
        self.inv.apply(&picked)
    }

    pub fn basis_matrix(&self) -> &SparseMatrix {
        &self.basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_dense(
            &rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rref_is_canonical() {
        let a = m(&[&[2, 4, 1], &[1, 2, 0], &[3, 6, 1]]);
        let r = rref_of_rows(&a);
        assert_eq!(r.pivots, vec![0, 2]);
        let k = kernel(&a);
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).is_zero());
        let mut rows = a.rows();
        rows.reverse();
        let r2 = rref(3, rows);
        assert_eq!(r.rows, r2.rows);
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), SparseMatrix::identity(2));
        let b = SparseVec::from_dense(&[Rational::from_int(3), Rational::from_int(1)]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.apply(&x), b);
        let z = SparseMatrix::zeros(2, 2);
        assert!(solve(&z, &b).is_none());
        assert!(inverse(&z).is_err());
    }

    #[test]
    fn coordinates() {
        let v1 = SparseVec::from_dense(&[1.into(), 1.into(), 0.into()]);
        let v2 = SparseVec::from_dense(&[0.into(), 1.into(), 1.into()]);
        let s = CoordinateSolver::new(3, &[v1.clone(), v2.clone()]).unwrap();
        let w = v1.scale(&Rational::new(1, 2)).add(&v2.scale(&Rational::from_int(-3)));
        assert_eq!(s.coords(&w).unwrap().to_dense(), vec![Rational::new(1, 2), Rational::from_int(-3)]);
        assert!(s.coords(&SparseVec::unit(3, 0)).is_none());
    }
}
