use super::Rational;

/// Sparse coordinate vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Rational)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec { dim, entries: Vec::new() }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        SparseVec { dim, entries: vec![(i, Rational::one())] }
    }

    /// Builds from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs(dim: usize, mut pairs: Vec<(usize, Rational)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, Rational)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            assert!(i < dim, "index {i} out of range {dim}");
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += &v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { dim, entries }
    }

    pub fn from_dense(v: &[Rational]) -> Self {
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        SparseVec { dim: v.len(), entries }
    }

    pub fn to_dense(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Rational)> {
        self.entries
    }

    pub fn get(&self, i: usize) -> Rational {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Rational)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn scale(&self, c: &Rational) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rational, other: &SparseVec) -> SparseVec {
        assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let mut s = x.clone();
                        s.add_mul(c, y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { dim: self.dim, entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Rational::one(), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Rational {
        let mut acc = Rational::zero();
        let (mut p, mut q) = (0, 0);
        while p < self.entries.len() && q < other.entries.len() {
            let (i, x) = &self.entries[p];
            let (j, y) = &other.entries[q];
            if i < j {
                p += 1;
            } else if j < i {
                q += 1;
            } else {
                acc.add_mul(x, y);
                p += 1;
                q += 1;
            }
        }
        acc
    }
}

/// Sparse matrix stored by columns; each column is a sorted list of (row, value).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Rational::one())
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for (j, col) in m.cols.iter_mut().enumerate() {
                col.push((j, c.clone()));
            }
        }
        m
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        let cols = cols
            .into_iter()
            .map(|c| {
                assert_eq!(c.dim(), nrows);
                c.into_entries()
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn from_rows(ncols: usize, rows: &[SparseVec]) -> Self {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), ncols);
            for (j, v) in r.entries() {
                cols[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { nrows: rows.len(), cols }
    }

    /// Builds from (row, col, value) triplets, summing duplicates.
    pub fn from_triplets(nrows: usize, ncols: usize, trips: Vec<(usize, usize, Rational)>) -> Self {
        let mut per_col: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); ncols];
        for (i, j, v) in trips {
            assert!(i < nrows && j < ncols, "triplet ({i},{j}) out of range");
            per_col[j].push((i, v));
        }
        let cols = per_col
            .into_iter()
            .map(|c| SparseVec::from_pairs(nrows, c).into_entries())
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut trips = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols);
            for (j, v) in r.iter().enumerate() {
                if !v.is_zero() {
                    trips.push((i, j, v.clone()));
                }
            }
        }
        Self::from_triplets(nrows, ncols, trips)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn col(&self, j: usize) -> &[(usize, Rational)] {
        &self.cols[j]
    }

    pub fn column_vec(&self, j: usize) -> SparseVec {
        SparseVec::from_pairs(self.nrows, self.cols[j].clone())
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        (0..self.ncols()).map(|j| self.column_vec(j)).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.cols[j].binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.cols[j][p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// All nonzero entries as (row, col, value), column-major.
    pub fn triplets(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                out.push((*i, j, v.clone()));
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols(), cols }
    }

    pub fn rows(&self) -> Vec<SparseVec> {
        let t = self.transpose();
        t.columns()
    }

    pub fn scale(&self, c: &Rational) -> SparseMatrix {
        if c.is_zero() {
            return Self::zeros(self.nrows, self.ncols());
        }
        SparseMatrix {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|col| col.iter().map(|(i, v)| (*i, v * c)).collect())
                .collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &Rational, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols()), (other.nrows, other.ncols()), "shape mismatch");
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let va = SparseVec { dim: self.nrows, entries: a.clone() };
                let vb = SparseVec { dim: self.nrows, entries: b.clone() };
                va.axpy(c, &vb).into_entries()
            })
            .collect();
        SparseMatrix { nrows: self.nrows, cols }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Rational::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&-Rational::one(), other)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.nrows, "inner dimension mismatch");
        let mut acc = DenseAccumulator::new(self.nrows);
        let cols = rhs
            .cols
            .iter()
            .map(|bcol| {
                for (k, b) in bcol {
                    for (i, a) in &self.cols[*k] {
                        acc.add_mul(*i, a, b);
                    }
                }
                acc.drain()
            })
            .collect();
        SparseMatrix { nrows: self.nrows, cols }
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        assert_eq!(x.dim(), self.ncols(), "vector dimension mismatch");
        let mut acc = DenseAccumulator::new(self.nrows);
        for (k, b) in x.entries() {
            for (i, a) in &self.cols[*k] {
                acc.add_mul(*i, a, b);
            }
        }
        SparseVec { dim: self.nrows, entries: acc.drain() }
    }

    /// `y += self * x` on dense slices.
    pub fn apply_dense_into(&self, x: &[Rational], y: &mut [Rational]) {
        assert_eq!(x.len(), self.ncols());
        assert_eq!(y.len(), self.nrows);
        for (k, b) in x.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            for (i, a) in &self.cols[k] {
                y[*i].add_mul(a, b);
            }
        }
    }

    pub fn apply_dense(&self, x: &[Rational]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.nrows];
        self.apply_dense_into(x, &mut y);
        y
    }

    /// Kronecker product `self ⊗ rhs` with index `(i, k) ↦ i * rhs.nrows + k`.
    pub fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let (p, q) = (rhs.nrows, rhs.ncols());
        let mut cols = Vec::with_capacity(self.ncols() * q);
        for acol in &self.cols {
            for bcol in &rhs.cols {
                let mut c = Vec::with_capacity(acol.len() * bcol.len());
                for (i, a) in acol {
                    for (k, b) in bcol {
                        c.push((i * p + k, a * b));
                    }
                }
                cols.push(c);
            }
        }
        SparseMatrix { nrows: self.nrows * p, cols }
    }

    pub fn select_columns(&self, idx: &[usize]) -> SparseMatrix {
        SparseMatrix { nrows: self.nrows, cols: idx.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.nrows, other.nrows);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        SparseMatrix { nrows: self.nrows, cols }
    }

    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.ncols());
        let off = self.nrows;
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut c = a.clone();
                c.extend(b.iter().map(|(i, v)| (i + off, v.clone())));
                c
            })
            .collect();
        SparseMatrix { nrows: self.nrows + other.nrows, cols }
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &SparseMatrix) -> SparseMatrix {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> Rational {
        let mut t = Rational::zero();
        for j in 0..self.ncols().min(self.nrows) {
            t += self.get(j, j);
        }
        t
    }

    /// True when the only nonzero entries lie on the diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| c.iter().all(|(i, _)| *i == j))
    }
}

/// Dense scratch vector that remembers which slots were touched.
pub struct DenseAccumulator {
    vals: Vec<Rational>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl DenseAccumulator {
    pub fn new(n: usize) -> Self {
        DenseAccumulator { vals: vec![Rational::zero(); n], touched: Vec::new(), mark: vec![false; n] }
    }

    pub fn add_mul(&mut self, i: usize, a: &Rational, b: &Rational) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
        self.vals[i].add_mul(a, b);
    }

    pub fn add(&mut self, i: usize, a: &Rational) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
        self.vals[i] += a;
    }

    /// Returns the sorted nonzero entries and resets the accumulator.
    pub fn drain(&mut self) -> Vec<(usize, Rational)> {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let v = std::mem::take(&mut self.vals[i]);
            if !v.is_zero() {
                out.push((i, v));
            }
        }
        self.touched.clear();
        out
    }

    pub fn drain_vec(&mut self) -> SparseVec {
        let dim = self.vals.len();
        SparseVec { dim, entries: self.drain() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_dense(&[vec![r(1), r(2)], vec![r(0), r(3)]]);
        let b = SparseMatrix::from_dense(&[vec![r(4), r(0)], vec![r(1), r(-1)]]);
        let ab = a.mul(&b);
        assert_eq!(ab.to_dense(), vec![vec![r(6), r(-2)], vec![r(3), r(-3)]]);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(ab.transpose(), b.transpose().mul(&a.transpose()));
    }

    #[test]
    fn kron_layout() {
        let a = SparseMatrix::from_dense(&[vec![r(0), r(1)], vec![r(1), r(0)]]);
        let i = SparseMatrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), r(1));
        assert_eq!(k.get(3, 1), r(1));
        assert_eq!(k.nnz(), 4);
    }

    #[test]
    fn vector_ops() {
        let u = SparseVec::from_pairs(4, vec![(2, r(1)), (0, r(3)), (2, r(-1))]);
        assert_eq!(u.entries(), &[(0, r(3))]);
        let v = SparseVec::unit(4, 0);
        assert!(u.axpy(&r(-3), &v).is_zero());
        assert_eq!(u.dot(&v), r(3));
    }
}
