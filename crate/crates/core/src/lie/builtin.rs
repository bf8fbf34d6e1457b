use std::collections::BTreeMap;

use super::{from_matrix_basis, LieAlgebraData, ParabolicGrading};
use crate::error::{Error, Result};
use crate::exact::{elim, Rational, SparseMatrix, SparseVec};

/// Built-in parabolic families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinFamily {
    Conformal { p: usize, q: usize },
    Projective { n: usize },
    G2,
}

impl BuiltinFamily {
    /// Parses `conformal:p,q`, `projective:n` or `g2`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |m: &str| Error::Unsupported(format!("{m} in algebra name '{s}'"));
        if s == "g2" || s == "g2_pfaffian" {
            return Ok(BuiltinFamily::G2);
        }
        if let Some(rest) = s.strip_prefix("conformal:") {
            let (p, q) = rest.split_once(',').ok_or_else(|| bad("expected p,q"))?;
            let p = p.trim().parse().map_err(|_| bad("bad p"))?;
            let q = q.trim().parse().map_err(|_| bad("bad q"))?;
            return Ok(BuiltinFamily::Conformal { p, q });
        }
        if let Some(rest) = s.strip_prefix("projective:") {
            let n = rest.trim().parse().map_err(|_| bad("bad n"))?;
            return Ok(BuiltinFamily::Projective { n });
        }
        Err(bad("unknown family"))
    }

    pub fn name(&self) -> String {
        match self {
            BuiltinFamily::Conformal { p, q } => format!("conformal:{p},{q}"),
            BuiltinFamily::Projective { n } => format!("projective:{n}"),
            BuiltinFamily::G2 => "g2".into(),
        }
    }
}

/// A graded algebra: the Lie algebra together with its parabolic grading.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub algebra: LieAlgebraData,
    pub grading: ParabolicGrading,
}

impl GradedAlgebra {
    pub fn new(algebra: LieAlgebraData, grading_element: SparseVec) -> Result<Self> {
        let grading = ParabolicGrading::new(&algebra, grading_element)?;
        let algebra = algebra.with_weights(grading.weights().to_vec())?;
        Ok(GradedAlgebra { algebra, grading })
    }
}

pub fn builtin_parabolic(family: &BuiltinFamily) -> Result<GradedAlgebra> {
    match *family {
        BuiltinFamily::Conformal { p, q } => conformal(p, q),
        BuiltinFamily::Projective { n } => projective(n),
        BuiltinFamily::G2 => g2(),
    }
}

fn unit(i: usize, j: usize, v: Rational) -> Vec<(usize, usize, Rational)> {
    vec![(i, j, v)]
}

fn assemble(size: usize, parts: &[Vec<(usize, usize, Rational)>]) -> SparseMatrix {
    SparseMatrix::from_triplets(size, size, parts.concat())
}

fn graded(labels: Vec<String>, mats: Vec<SparseMatrix>, e_label: &str) -> Result<GradedAlgebra> {
    let e = labels.iter().position(|l| l == e_label).expect("grading element label present");
    let alg = from_matrix_basis(labels, mats)?;
    let n = alg.dim();
    GradedAlgebra::new(alg, SparseVec::unit(n, e))
}

/// `so(p+1, q+1)` preserving `2 x_0 x_{n+1} + Σ s_i x_i²`, graded by the stabilizer of `⟨e_0⟩`.
pub fn conformal(p: usize, q: usize) -> Result<GradedAlgebra> {
    let n = p + q;
    if n < 3 {
        return Err(Error::Unsupported(format!("conformal({p},{q}) needs p + q >= 3")));
    }
    let size = n + 2;
    let one = Rational::one;
    let s = |i: usize| if i <= p { Rational::one() } else { -Rational::one() };
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 1..=n {
        labels.push(format!("P{i}"));
        mats.push(assemble(size, &[unit(0, i, one()), unit(i, n + 1, -s(i))]));
    }
    labels.push("E".into());
    mats.push(assemble(size, &[unit(0, 0, one()), unit(n + 1, n + 1, -one())]));
    for i in 1..=n {
        for j in (i + 1)..=n {
            labels.push(format!("M{i}_{j}"));
            mats.push(assemble(size, &[unit(i, j, s(i)), unit(j, i, -s(j))]));
        }
    }
    for i in 1..=n {
        labels.push(format!("K{i}"));
        mats.push(assemble(size, &[unit(i, 0, s(i)), unit(n + 1, i, -one())]));
    }
    graded(labels, mats, "E")
}

/// `sl(n+1)` graded by the stabilizer of the line `⟨e_0⟩`.
pub fn projective(n: usize) -> Result<GradedAlgebra> {
    if n < 2 {
        return Err(Error::Unsupported(format!("projective({n}) needs n >= 2")));
    }
    let size = n + 1;
    let one = Rational::one;
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for j in 1..=n {
        labels.push(format!("X{j}"));
        mats.push(assemble(size, &[unit(0, j, one())]));
    }
    labels.push("E".into());
    let d = Rational::from_int(size as i64);
    let mut diag = vec![(0, 0, Rational::from_int(n as i64) / &d)];
    for j in 1..=n {
        diag.push((j, j, -(Rational::one() / &d)));
    }
    mats.push(assemble(size, &[diag]));
    for j in 1..n {
        labels.push(format!("H{j}"));
        mats.push(assemble(size, &[unit(j, j, one()), unit(j + 1, j + 1, -one())]));
    }
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                labels.push(format!("A{i}_{j}"));
                mats.push(assemble(size, &[unit(i, j, one())]));
            }
        }
    }
    for j in 1..=n {
        labels.push(format!("Y{j}"));
        mats.push(assemble(size, &[unit(j, 0, one())]));
    }
    graded(labels, mats, "E")
}

/// Split `g2` as the stabilizer in `gl(7)` of the 3-form
/// `x¹x²x³ + x⁻¹x⁻²x⁻³ + x⁰(x¹x⁻¹ + x²x⁻² + x³x⁻³)`,
/// graded by the simple-root coefficient of the short simple root.
///
/// Coordinates are ordered `v1, v2, v3, v0, v-1, v-2, v-3`; the torus is
/// `diag(t1, t2, t3, 0, -t1, -t2, -t3)` with `t1 + t2 + t3 = 0`, and the
/// simple roots are `α1 = t1` (short) and `α2 = t2 - t1`.
pub fn g2() -> Result<GradedAlgebra> {
    const DIM: usize = 7;
    let signed = [1i64, 2, 3, 0, -1, -2, -3];
    let pos = |a: i64| signed.iter().position(|&x| x == a).expect("coordinate");
    let mut phi = vec![Rational::zero(); DIM * DIM * DIM];
    let mut add_term = |a: i64, b: i64, c: i64| {
        let idx = [pos(a), pos(b), pos(c)];
        let perms = [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([1, 0, 2], -1), ([0, 2, 1], -1), ([2, 1, 0], -1)];
        for (p, sg) in perms {
            let k = idx[p[0]] * DIM * DIM + idx[p[1]] * DIM + idx[p[2]];
            phi[k] += Rational::from_int(sg);
        }
    };
    add_term(1, 2, 3);
    add_term(-1, -2, -3);
    for i in 1..=3 {
        add_term(0, i, -i);
    }
    let at = |a: usize, b: usize, c: usize| &phi[a * DIM * DIM + b * DIM + c];
    // Coefficient of X_{de} in the equation indexed by the triple (a, b, c).
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    for a in 0..DIM {
        for b in (a + 1)..DIM {
            for c in (b + 1)..DIM {
                let mut row = Vec::new();
                for d in 0..DIM {
                    row.push((d * DIM + a, at(d, b, c).clone()));
                    row.push((d * DIM + b, at(a, d, c).clone()));
                    row.push((d * DIM + c, at(a, b, d).clone()));
                }
                rows.push(row);
            }
        }
    }
    let eqs: Vec<SparseVec> = rows.into_iter().map(|r| SparseVec::from_pairs(DIM * DIM, r)).collect();
    let t: [(i64, i64); DIM] = [(1, 0), (0, 1), (-1, -1), (0, 0), (-1, 0), (0, -1), (1, 1)];
    let mut by_weight: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for d in 0..DIM {
        for e in 0..DIM {
            let w = (t[d].0 - t[e].0, t[d].1 - t[e].1);
            by_weight.entry(w).or_default().push(d * DIM + e);
        }
    }
    let to_matrix = |v: &SparseVec| {
        SparseMatrix::from_triplets(DIM, DIM, v.entries().iter().map(|(k, x)| (k / DIM, k % DIM, x.clone())).collect())
    };
    let mut entries: Vec<(i64, String, SparseMatrix)> = Vec::new();
    let mut total = 0;
    for (w, units) in &by_weight {
        let sub: Vec<SparseVec> = eqs
            .iter()
            .map(|r| {
                SparseVec::from_pairs(
                    units.len(),
                    units.iter().enumerate().map(|(p, &u)| (p, r.get(u))).filter(|(_, x)| !x.is_zero()).collect(),
                )
            })
            .collect();
        let red = elim::rref(units.len(), sub);
        let ker = red.null_space();
        total += ker.len();
        if *w == (0, 0) || ker.is_empty() {
            continue;
        }
        if ker.len() != 1 {
            return Err(Error::Invariant(format!("g2 root space of weight {w:?} has dimension {}", ker.len())));
        }
        let lifted = SparseVec::from_pairs(
            DIM * DIM,
            ker[0].entries().iter().map(|(p, x)| (units[*p], x.clone())).collect(),
        );
        let (a, b) = (w.0 + w.1, w.1);
        entries.push((a, format!("X[{a},{b}]"), to_matrix(&lifted)));
    }
    if total != 14 {
        return Err(Error::Invariant(format!("3-form stabilizer has dimension {total}")));
    }
    let diag = |vals: [i64; 3]| {
        let mut tr = Vec::new();
        for (i, v) in vals.iter().enumerate() {
            tr.push((i, i, Rational::from_int(*v)));
            tr.push((i + 4, i + 4, Rational::from_int(-*v)));
        }
        SparseMatrix::from_triplets(DIM, DIM, tr)
    };
    entries.push((0, "E".into(), diag([1, 1, -2])));
    entries.push((0, "H".into(), diag([1, -1, 0])));
    entries.sort_by(|x, y| y.0.cmp(&x.0).then_with(|| x.1.cmp(&y.1)));
    let (labels, mats): (Vec<String>, Vec<SparseMatrix>) = entries.into_iter().map(|(_, l, m)| (l, m)).unzip();
    graded(labels, mats, "E")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer_dims(g: &GradedAlgebra) -> Vec<(Rational, usize)> {
        g.grading.layers().iter().map(|(w, v)| (w.clone(), v.len())).collect()
    }

    #[test]
    fn conformal_dims() {
        let g = conformal(3, 0).unwrap();
        assert_eq!(g.algebra.dim(), 10);
        assert_eq!(g.grading.n(), 3);
        assert_eq!(g.grading.g0_basis().len(), 4);
        assert_eq!(g.grading.negative_basis().len(), 3);
        assert!(g.grading.is_abelian());
        let g = conformal(2, 2).unwrap();
        assert_eq!(g.algebra.dim(), 15);
        assert!(conformal(2, 0).is_err());
    }

    #[test]
    fn projective_dims() {
        let g = projective(2).unwrap();
        assert_eq!(g.algebra.dim(), 8);
        assert_eq!(g.grading.n(), 2);
        assert!(projective(1).is_err());
    }

    #[test]
    fn g2_layers() {
        let g = g2().unwrap();
        assert_eq!(g.algebra.dim(), 14);
        let mut mw: Vec<Rational> = g.grading.m_basis().iter().map(|&i| g.grading.weight(i).clone()).collect();
        mw.sort();
        let want: Vec<Rational> = [1, 1, 2, 3, 3].iter().map(|&x| Rational::from_int(x)).collect();
        assert_eq!(mw, want);
        assert!(!g.grading.is_abelian());
        let dims: Vec<usize> = layer_dims(&g).into_iter().map(|x| x.1).collect();
        assert_eq!(dims, vec![2, 1, 2, 4, 2, 1, 2]);
    }

    #[test]
    fn parse_names() {
        assert_eq!(BuiltinFamily::parse("conformal:3,0").unwrap(), BuiltinFamily::Conformal { p: 3, q: 0 });
        assert_eq!(BuiltinFamily::parse("projective:2").unwrap(), BuiltinFamily::Projective { n: 2 });
        assert_eq!(BuiltinFamily::parse("g2").unwrap(), BuiltinFamily::G2);
        assert!(BuiltinFamily::parse("sp:4").is_err());
    }
}
