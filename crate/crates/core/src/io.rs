//! Plain-text interchange formats.
//!
//! Every format is line oriented: a magic first line, labelled sections, and records
//! whose rational fields are written as separate numerator and denominator integers.
//! Basis labels occupy a whole line (tab-separated from their weight) since they may
//! contain commas and parentheses.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{BasedSpace, OperatorMatrix, Rational, SparseMatrix, SparseVec};
use crate::flat::PolySectionSpace;
use crate::homology::{hodge_split, homology_module, ChainComplexData};
use crate::lie::{build_lie_algebra, GradedAlgebra, StructureConstant};

const MATRIX_MAGIC: &str = "bgg-sparse-matrix 1";
const ALGEBRA_MAGIC: &str = "bgg-structure-constants 1";
const TABLE_MAGIC: &str = "bgg-homology-table 1";
const SECTION_MAGIC: &str = "bgg-section 1";

fn ratio(v: &Rational) -> String {
    format!("{} {}", v.numer(), v.denom())
}

struct Lines<'a> {
    it: std::iter::Enumerate<std::str::Lines<'a>>,
    line: usize,
}

impl<'a> Lines<'a> {
    fn new(s: &'a str) -> Self {
        Lines { it: s.lines().enumerate(), line: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Format(format!("line {}: {}", self.line, msg.into()))
    }

    fn next(&mut self) -> Result<&'a str> {
        match self.it.next() {
            Some((i, l)) => {
                self.line = i + 1;
                Ok(l)
            }
            None => Err(Error::Format(format!("unexpected end of input after line {}", self.line))),
        }
    }

    fn expect(&mut self, want: &str) -> Result<()> {
        let l = self.next()?;
        if l.trim_end() != want {
            return Err(self.err(format!("expected '{want}', found '{l}'")));
        }
        Ok(())
    }

    /// `keyword <count>`
    fn count(&mut self, keyword: &str) -> Result<usize> {
        let l = self.next()?;
        let rest = l.strip_prefix(keyword).and_then(|r| r.strip_prefix(' ')).ok_or_else(|| self.err(format!("expected '{keyword} <count>'")))?;
        rest.trim().parse().map_err(|_| self.err(format!("bad count '{rest}'")))
    }

    /// `keyword <value>`
    fn field(&mut self, keyword: &str) -> Result<&'a str> {
        let l = self.next()?;
        l.strip_prefix(keyword).and_then(|r| r.strip_prefix(' ')).ok_or_else(|| self.err(format!("expected '{keyword} …'")))
    }

    fn ints<const N: usize>(&self, fields: &[&str]) -> Result<[usize; N]> {
        let mut out = [0; N];
        for (o, f) in out.iter_mut().zip(fields) {
            *o = f.parse().map_err(|_| self.err(format!("bad index '{f}'")))?;
        }
        Ok(out)
    }

    fn rational(&self, num: &str, den: &str) -> Result<Rational> {
        format!("{num}/{den}").parse().map_err(|e| self.err(format!("bad rational {num}/{den}: {e}")))
    }

    fn finish(&mut self) -> Result<()> {
        for (i, l) in self.it.by_ref() {
            if !l.trim().is_empty() {
                return Err(Error::Format(format!("line {}: trailing content '{l}'", i + 1)));
            }
        }
        Ok(())
    }
}

fn write_space(out: &mut String, keyword: &str, s: &BasedSpace) {
    let _ = writeln!(out, "{keyword} {}", s.dim());
    for (l, w) in s.labels().iter().zip(s.weights()) {
        let _ = writeln!(out, "{l}\t{w}");
    }
}

fn read_space(lines: &mut Lines<'_>, keyword: &str) -> Result<BasedSpace> {
    let n = lines.count(keyword)?;
    let mut labels = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        let l = lines.next()?;
        let (label, w) = l.rsplit_once('\t').ok_or_else(|| lines.err("expected '<label>\\t<weight>'"))?;
        labels.push(label.to_string());
        weights.push(w.parse().map_err(|e| lines.err(format!("bad weight '{w}': {e}")))?);
    }
    BasedSpace::new(labels, weights)
}

/// Sparse-triplet export of an operator matrix with its domain and codomain bases.
pub fn write_matrix(op: &OperatorMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MATRIX_MAGIC}");
    write_space(&mut out, "domain", &op.domain);
    write_space(&mut out, "codomain", &op.codomain);
    let trips = op.matrix.triplets();
    let _ = writeln!(out, "entries {}", trips.len());
    for (i, j, v) in trips {
        let _ = writeln!(out, "{i} {j} {}", ratio(&v));
    }
    out
}

pub fn read_matrix(s: &str) -> Result<OperatorMatrix> {
    let mut lines = Lines::new(s);
    lines.expect(MATRIX_MAGIC)?;
    let domain = Arc::new(read_space(&mut lines, "domain")?);
    let codomain = Arc::new(read_space(&mut lines, "codomain")?);
    let nnz = lines.count("entries")?;
    let mut trips = Vec::with_capacity(nnz);
    for _ in 0..nnz {
        let l = lines.next()?;
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 4 {
            return Err(lines.err("expected '<row> <col> <num> <den>'"));
        }
        let [i, j] = lines.ints::<2>(&f[..2])?;
        if i >= codomain.dim() || j >= domain.dim() {
            return Err(lines.err(format!("entry ({i}, {j}) outside {}×{}", codomain.dim(), domain.dim())));
        }
        let v = lines.rational(f[2], f[3])?;
        if v.is_zero() {
            return Err(lines.err("explicit zero entry"));
        }
        trips.push((i, j, v));
    }
    lines.finish()?;
    let m = SparseMatrix::from_triplets(codomain.dim(), domain.dim(), trips);
    OperatorMatrix::new(domain, codomain, m)
}

/// Structure constants `[b_i, b_j] = Σ c b_k` for `i < j`, plus grading-element coordinates.
pub fn write_structure_constants(ga: &GradedAlgebra) -> String {
    let mut out = String::new();
    let alg = &ga.algebra;
    let _ = writeln!(out, "{ALGEBRA_MAGIC}");
    let _ = writeln!(out, "basis {}", alg.dim());
    for l in alg.basis().labels() {
        let _ = writeln!(out, "{l}");
    }
    let e = ga.grading.grading_element();
    let _ = writeln!(out, "grading {}", e.nnz());
    for (i, v) in e.entries() {
        let _ = writeln!(out, "{i} {}", ratio(v));
    }
    let cs: Vec<StructureConstant> = alg.structure_constants().into_iter().filter(|c| c.i < c.j).collect();
    let _ = writeln!(out, "brackets {}", cs.len());
    for c in cs {
        let _ = writeln!(out, "{} {} {} {}", c.i, c.j, c.k, ratio(&c.value));
    }
    out
}

/// Parsed structure-constant file: the basis, the records with `i < j`, and the grading element.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTable {
    pub labels: Vec<String>,
    pub constants: Vec<StructureConstant>,
    pub grading_element: SparseVec,
}

impl StructureTable {
    /// All records including the antisymmetric partners.
    pub fn full_constants(&self) -> Vec<StructureConstant> {
        let mut all = Vec::with_capacity(2 * self.constants.len());
        for c in &self.constants {
            all.push(c.clone());
            all.push(StructureConstant { i: c.j, j: c.i, k: c.k, value: -c.value.clone() });
        }
        all
    }

    /// Validates brackets (antisymmetry, Jacobi) and the grading.
    pub fn build(&self) -> Result<GradedAlgebra> {
        let basis = BasedSpace::unweighted(self.labels.clone())?;
        let alg = build_lie_algebra(basis, &self.full_constants())?;
        GradedAlgebra::new(alg, self.grading_element.clone())
    }
}

pub fn read_structure_constants(s: &str) -> Result<StructureTable> {
    let mut lines = Lines::new(s);
    lines.expect(ALGEBRA_MAGIC)?;
    let n = lines.count("basis")?;
    let labels = (0..n).map(|_| lines.next().map(str::to_string)).collect::<Result<Vec<_>>>()?;
    let g = lines.count("grading")?;
    let mut pairs = Vec::with_capacity(g);
    for _ in 0..g {
        let l = lines.next()?;
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 3 {
            return Err(lines.err("expected '<index> <num> <den>'"));
        }
        let [i] = lines.ints::<1>(&f[..1])?;
        if i >= n {
            return Err(lines.err(format!("grading index {i} out of range")));
        }
        pairs.push((i, lines.rational(f[1], f[2])?));
    }
    let m = lines.count("brackets")?;
    let mut constants = Vec::with_capacity(m);
    for _ in 0..m {
        let l = lines.next()?;
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 5 {
            return Err(lines.err("expected '<i> <j> <k> <num> <den>'"));
        }
        let [i, j, k] = lines.ints::<3>(&f[..3])?;
        if i >= j {
            return Err(lines.err("list each bracket once, with i < j"));
        }
        if j >= n || k >= n {
            return Err(lines.err(format!("index out of range 0..{n}")));
        }
        constants.push(StructureConstant { i, j, k, value: lines.rational(f[3], f[4])? });
    }
    lines.finish()?;
    Ok(StructureTable { labels, constants, grading_element: SparseVec::from_pairs(n, pairs) })
}

/// One degree of a homology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRow {
    pub k: usize,
    pub chain_dim: usize,
    pub im_d: usize,
    pub harmonic: usize,
    pub im_delta: usize,
    pub homology_dim: usize,
    pub weights: BTreeMap<Rational, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub algebra: String,
    pub rep: String,
    pub rows: Vec<HomologyRow>,
}

impl HomologyTable {
    pub fn compute(algebra: &str, cx: &ChainComplexData) -> Result<Self> {
        let mut rows = Vec::new();
        for k in 0..=cx.n() {
            let (im_d, harmonic, im_delta) = hodge_split(cx, k)?.dims();
            let h = homology_module(cx, k)?;
            rows.push(HomologyRow {
                k,
                chain_dim: cx.dim(k),
                im_d,
                harmonic,
                im_delta,
                homology_dim: h.dim(),
                weights: h.weight_multiset(),
            });
        }
        Ok(HomologyTable { algebra: algebra.to_string(), rep: cx.rep().name().to_string(), rows })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.homology_dim).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.rows.iter().map(|r| if r.k % 2 == 0 { r.homology_dim as i64 } else { -(r.homology_dim as i64) }).sum()
    }

    pub fn write(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{TABLE_MAGIC}");
        let _ = writeln!(out, "algebra {}", self.algebra);
        let _ = writeln!(out, "rep {}", self.rep);
        let _ = writeln!(out, "degrees {}", self.rows.len());
        for r in &self.rows {
            let ws: Vec<String> = r.weights.iter().map(|(w, m)| format!("{w}x{m}")).collect();
            let ws = if ws.is_empty() { "-".to_string() } else { ws.join(",") };
            let _ = writeln!(out, "{} {} {} {} {} {} {}", r.k, r.chain_dim, r.im_d, r.harmonic, r.im_delta, r.homology_dim, ws);
        }
        out
    }

    pub fn read(s: &str) -> Result<Self> {
        let mut lines = Lines::new(s);
        lines.expect(TABLE_MAGIC)?;
        let algebra = lines.field("algebra")?.to_string();
        let rep = lines.field("rep")?.to_string();
        let n = lines.count("degrees")?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let l = lines.next()?;
            let f: Vec<&str> = l.split_whitespace().collect();
            if f.len() != 7 {
                return Err(lines.err("expected 'k dimC im_d harmonic im_delta dimH weights'"));
            }
            let [k, chain_dim, im_d, harmonic, im_delta, homology_dim] = lines.ints::<6>(&f[..6])?;
            let mut weights = BTreeMap::new();
            if f[6] != "-" {
                for item in f[6].split(',') {
                    let (w, m) = item.rsplit_once('x').ok_or_else(|| lines.err(format!("bad weight entry '{item}'")))?;
                    let w: Rational = w.parse().map_err(|e| lines.err(format!("bad weight '{w}': {e}")))?;
                    let m: usize = m.parse().map_err(|_| lines.err(format!("bad multiplicity '{m}'")))?;
                    weights.insert(w, m);
                }
            }
            rows.push(HomologyRow { k, chain_dim, im_d, harmonic, im_delta, homology_dim, weights });
        }
        lines.finish()?;
        Ok(HomologyTable { algebra, rep, rows })
    }
}

/// Polynomial section as `(exponents, fiber label, coefficient)` records.
pub fn write_section(space: &PolySectionSpace, v: &SparseVec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{SECTION_MAGIC}");
    let _ = writeln!(out, "variables {}", space.n_vars());
    let _ = writeln!(out, "cutoff {}", space.max_degree());
    let terms = space.terms(v);
    let _ = writeln!(out, "terms {}", terms.len());
    for (e, label, c) in terms {
        let e: Vec<String> = e.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{} {}\t{label}", e.join(" "), ratio(&c));
    }
    out
}

pub fn read_section(space: &PolySectionSpace, s: &str) -> Result<SparseVec> {
    let mut lines = Lines::new(s);
    lines.expect(SECTION_MAGIC)?;
    let n = lines.count("variables")?;
    let d = lines.count("cutoff")?;
    if n != space.n_vars() || d != space.max_degree() {
        return Err(Error::SpaceMismatch(format!(
            "section over {n} variables with cutoff {d}, space has {} and {}",
            space.n_vars(),
            space.max_degree()
        )));
    }
    let m = lines.count("terms")?;
    let mut terms = Vec::with_capacity(m);
    for _ in 0..m {
        let l = lines.next()?;
        let (nums, label) = l.split_once('\t').ok_or_else(|| lines.err("expected '<exponents> <num> <den>\\t<label>'"))?;
        let f: Vec<&str> = nums.split_whitespace().collect();
        if f.len() != n + 2 {
            return Err(lines.err(format!("expected {n} exponents and a rational")));
        }
        let exps = f[..n].iter().map(|x| x.parse::<u32>().map_err(|_| lines.err(format!("bad exponent '{x}'")))).collect::<Result<Vec<_>>>()?;
        terms.push((exps, label.to_string(), lines.rational(f[n], f[n + 1])?));
    }
    lines.finish()?;
    space.section(&terms)
}
