use std::collections::BTreeMap;
use std::sync::Arc;

use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::exact::{BasedSpace, Rational, SparseMatrix, SparseVec};

/// Whether every basis element of `g` acts, or only those of `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    GModule,
    PModuleOnly,
}

/// Action matrices of `g` (or of `p`) on a weight-adapted based module.
#[derive(Clone, Debug)]
pub struct RepresentationData {
    name: String,
    space: Arc<BasedSpace>,
    action: Vec<Option<SparseMatrix>>,
    scope: Scope,
}

impl RepresentationData {
    /// Assembles and validates a representation. Weights are read off the diagonal of `ρ(E)`.
    pub fn from_actions(
        name: impl Into<String>,
        labels: Vec<String>,
        action: Vec<Option<SparseMatrix>>,
        scope: Scope,
        ga: &GradedAlgebra,
    ) -> Result<Self> {
        let rep = Self::from_actions_unchecked(name, labels, action, scope, ga)?;
        let report = validate_representation(&rep, ga);
        if !report.is_valid() {
            return Err(Error::Representation(report.violations.join("; ")));
        }
        Ok(rep)
    }

    /// Assembles without checking the bracket relations.
    pub fn from_actions_unchecked(
        name: impl Into<String>,
        labels: Vec<String>,
        action: Vec<Option<SparseMatrix>>,
        scope: Scope,
        ga: &GradedAlgebra,
    ) -> Result<Self> {
        let g = &ga.algebra;
        let name = name.into();
        if action.len() != g.dim() {
            return Err(Error::Dimension(format!("{} action matrices for dim g = {}", action.len(), g.dim())));
        }
        let d = labels.len();
        for (i, a) in action.iter().enumerate() {
            match a {
                Some(m) if m.nrows() != d || m.ncols() != d => {
                    return Err(Error::Dimension(format!("action of {} is not {d}x{d}", g.label(i))))
                }
                None if scope == Scope::GModule || !ga.grading.p_basis().contains(&i) => {
                    return Err(Error::Representation(format!("missing action of {}", g.label(i))))
                }
                _ => {}
            }
        }
        let mut rho_e = SparseMatrix::zeros(d, d);
        for (i, c) in ga.grading.grading_element().entries() {
            let a = action[*i].as_ref().ok_or_else(|| Error::Representation("missing action of E".into()))?;
            rho_e = rho_e.axpy(c, a);
        }
        if !rho_e.is_diagonal() {
            return Err(Error::NotWeightAdapted(format!("rho(E) is not diagonal on '{name}'")));
        }
        let weights = (0..d).map(|i| rho_e.get(i, i)).collect();
        let space = Arc::new(BasedSpace::new(labels, weights)?);
        Ok(RepresentationData { name, space, action, scope })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<BasedSpace> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn weights(&self) -> &[Rational] {
        self.space.weights()
    }

    /// `ρ(b_i)`, or an error when `b_i` is outside the scope.
    pub fn action(&self, i: usize) -> Result<&SparseMatrix> {
        self.action[i].as_ref().ok_or(Error::NeedsGModule)
    }

    pub fn action_opt(&self, i: usize) -> Option<&SparseMatrix> {
        self.action[i].as_ref()
    }

    /// `ρ(v)` for a coordinate vector `v` of `g`.
    pub fn act(&self, v: &SparseVec) -> Result<SparseMatrix> {
        let d = self.dim();
        let mut out = SparseMatrix::zeros(d, d);
        for (i, c) in v.entries() {
            out = out.axpy(c, self.action(*i)?);
        }
        Ok(out)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Violated bracket relations; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepValidation {
    pub violations: Vec<String>,
    pub pairs_checked: usize,
    pub pairs_skipped: usize,
}

impl RepValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_representation(rep: &RepresentationData, ga: &GradedAlgebra) -> RepValidation {
    let g = &ga.algebra;
    let mut out = RepValidation::default();
    for i in 0..g.dim() {
        for j in (i + 1)..g.dim() {
            let (Some(a), Some(b)) = (rep.action_opt(i), rep.action_opt(j)) else {
                out.pairs_skipped += 1;
                continue;
            };
            out.pairs_checked += 1;
            match rep.act(g.bracket_basis(i, j)) {
                Ok(lhs) if lhs == a.commutator(b) => {}
                _ => out.violations.push(format!("({}, {})", g.label(i), g.label(j))),
            }
        }
    }
    if let Ok(e) = rep.act(ga.grading.grading_element()) {
        let expect = SparseMatrix::from_triplets(
            rep.dim(),
            rep.dim(),
            rep.weights().iter().enumerate().map(|(i, w)| (i, i, w.clone())).collect(),
        );
        if e != expect {
            out.violations.push("(E, weights)".into());
        }
    }
    out
}

/// Basis partitioned by geometric weight.
#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub parts: BTreeMap<Rational, Vec<usize>>,
    /// Every `ρ(ξ)`, `ξ ∈ m*`, maps weight `w` into weights `< w`.
    pub lowering: bool,
}

pub fn weight_decomposition(rep: &RepresentationData, ga: &GradedAlgebra) -> Result<WeightDecomposition> {
    let e = rep.act(ga.grading.grading_element())?;
    if !e.is_diagonal() {
        return Err(Error::NotWeightAdapted(rep.name().into()));
    }
    let mut parts: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
    for (i, w) in rep.weights().iter().enumerate() {
        parts.entry(w.clone()).or_default().push(i);
    }
    let w = rep.weights();
    let mut lowering = true;
    for &xi in ga.grading.negative_basis() {
        let a = rep.action(xi)?;
        for (col, r) in a.triplets().into_iter().map(|(i, j, _)| (j, i)) {
            if w[r] >= w[col] {
                lowering = false;
            }
        }
    }
    Ok(WeightDecomposition { parts, lowering })
}

/// Representation constructor expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepExpr {
    Trivial,
    Standard,
    Adjoint,
    Dual(Box<RepExpr>),
    Tensor(Box<RepExpr>, Box<RepExpr>),
    Ext(Box<RepExpr>, usize),
}

impl std::fmt::Display for RepExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RepExpr::Trivial => write!(f, "trivial"),
            RepExpr::Standard => write!(f, "standard"),
            RepExpr::Adjoint => write!(f, "adjoint"),
            RepExpr::Dual(r) => write!(f, "dual({r})"),
            RepExpr::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            RepExpr::Ext(r, k) => write!(f, "ext({r},{k})"),
        }
    }
}

impl RepExpr {
    /// Parses the constructor grammar; errors carry the byte offset.
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a constructor name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Parser { s: self.s, pos: start }.err("expected a nonnegative integer"))
    }

    fn expr(&mut self) -> Result<RepExpr> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        Ok(match name.as_str() {
            "trivial" => RepExpr::Trivial,
            "standard" | "V" => RepExpr::Standard,
            "adjoint" | "g" => RepExpr::Adjoint,
            "dual" => {
                self.expect(b'(')?;
                let r = self.expr()?;
                self.expect(b')')?;
                RepExpr::Dual(Box::new(r))
            }
            "tensor" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                RepExpr::Tensor(Box::new(a), Box::new(b))
            }
            "ext" => {
                self.expect(b'(')?;
                let r = self.expr()?;
                self.expect(b',')?;
                let k = self.number()?;
                self.expect(b')')?;
                RepExpr::Ext(Box::new(r), k)
            }
            other => {
                return Err(Error::Parse { pos: start, msg: format!("unknown constructor '{other}'") });
            }
        })
    }
}

fn wrap(label: &str, seps: &[char]) -> String {
    if label.contains(seps) {
        format!("({label})")
    } else {
        label.to_string()
    }
}

pub fn trivial(ga: &GradedAlgebra) -> Result<RepresentationData> {
    let n = ga.algebra.dim();
    RepresentationData::from_actions("trivial", vec!["1".into()], vec![Some(SparseMatrix::zeros(1, 1)); n], Scope::GModule, ga)
}

pub fn standard(ga: &GradedAlgebra) -> Result<RepresentationData> {
    let mats = ga
        .algebra
        .defining_matrices()
        .ok_or_else(|| Error::Unsupported("standard representation needs a matrix realization".into()))?;
    let d = mats[0].nrows();
    let labels = (0..d).map(|i| format!("v{i}")).collect();
    RepresentationData::from_actions("standard", labels, mats.iter().cloned().map(Some).collect(), Scope::GModule, ga)
}

pub fn adjoint(ga: &GradedAlgebra) -> Result<RepresentationData> {
    let g = &ga.algebra;
    let labels = g.basis().labels().to_vec();
    let acts = (0..g.dim()).map(|i| Some(g.ad(i).clone())).collect();
    RepresentationData::from_actions("adjoint", labels, acts, Scope::GModule, ga)
}

pub fn dual(r: &RepresentationData, ga: &GradedAlgebra) -> Result<RepresentationData> {
    let labels = r.space().labels().iter().map(|l| format!("{}*", wrap(l, &['⊗', '∧']))).collect();
    let acts = (0..ga.algebra.dim())
        .map(|i| r.action_opt(i).map(|a| a.transpose().scale(&-Rational::one())))
        .collect();
    RepresentationData::from_actions(format!("dual({})", r.name()), labels, acts, r.scope(), ga)
}

pub fn tensor(a: &RepresentationData, b: &RepresentationData, ga: &GradedAlgebra) -> Result<RepresentationData> {
    let mut labels = Vec::with_capacity(a.dim() * b.dim());
    for la in a.space().labels() {
        for lb in b.space().labels() {
            labels.push(format!("{}⊗{}", wrap(la, &['∧']), wrap(lb, &['∧'])));
        }
    }
    let (ia, ib) = (SparseMatrix::identity(a.dim()), SparseMatrix::identity(b.dim()));
    let acts = (0..ga.algebra.dim())
        .map(|i| match (a.action_opt(i), b.action_opt(i)) {
            (Some(x), Some(y)) => Some(x.kron(&ib).add(&ia.kron(y))),
            _ => None,
        })
        .collect();
    let scope = if a.scope() == Scope::GModule && b.scope() == Scope::GModule { Scope::GModule } else { Scope::PModuleOnly };
    RepresentationData::from_actions(format!("tensor({},{})", a.name(), b.name()), labels, acts, scope, ga)
}

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Sorts `v` in place and returns the permutation sign, or `None` on a repeated entry.
pub fn sort_with_sign(v: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Derivation extension of `a` to `Λ^k`, on the lexicographic subset basis.
pub fn exterior_matrix(a: &SparseMatrix, k: usize) -> SparseMatrix {
    let n = a.ncols();
    let subs = subsets(n, k);
    let index: std::collections::HashMap<Vec<usize>, usize> =
        subs.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let mut trips = Vec::new();
    for (col, s) in subs.iter().enumerate() {
        for p in 0..k {
            for (r, v) in a.col(s[p]) {
                let mut t = s.clone();
                t[p] = *r;
                if let Some(sign) = sort_with_sign(&mut t) {
                    trips.push((index[&t], col, v * &Rational::from_int(sign)));
                }
            }
        }
    }
    SparseMatrix::from_triplets(subs.len(), subs.len(), trips)
}

pub fn exterior_power(r: &RepresentationData, k: usize, ga: &GradedAlgebra) -> Result<RepresentationData> {
    if k > r.dim() {
        return Err(Error::DegreeOutOfRange { k, max: r.dim() });
    }
    let labels = subsets(r.dim(), k)
        .into_iter()
        .map(|s| {
            if s.is_empty() {
                "1".to_string()
            } else {
                s.iter().map(|&i| wrap(r.space().label(i), &['⊗', '∧'])).collect::<Vec<_>>().join("∧")
            }
        })
        .collect();
    let acts = (0..ga.algebra.dim()).map(|i| r.action_opt(i).map(|a| exterior_matrix(a, k))).collect();
    RepresentationData::from_actions(format!("ext({},{k})", r.name()), labels, acts, r.scope(), ga)
}

pub fn build_representation(expr: &RepExpr, ga: &GradedAlgebra) -> Result<RepresentationData> {
    let rep = match expr {
        RepExpr::Trivial => trivial(ga)?,
        RepExpr::Standard => standard(ga)?,
        RepExpr::Adjoint => adjoint(ga)?,
        RepExpr::Dual(r) => dual(&build_representation(r, ga)?, ga)?,
        RepExpr::Tensor(a, b) => tensor(&build_representation(a, ga)?, &build_representation(b, ga)?, ga)?,
        RepExpr::Ext(r, k) => exterior_power(&build_representation(r, ga)?, *k, ga)?,
    };
    Ok(rep.with_name(expr.to_string()))
}
