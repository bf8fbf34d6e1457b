use super::products::wedge_sections;
use super::{BggContext, PairingData};
use crate::error::{Error, Result};
use crate::exact::{Rational, SparseVec};

/// A homogeneous section: form degree and coefficient vector.
pub type Graded = (usize, SparseVec);

fn parity(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        Rational::from_int(-1)
    }
}

/// The maps `μ_m` on homology sections of an algebra-valued context `A ⊗ A → A`.
///
/// `μ₁ = D` and `μ_m = [Π λ_m(Πα₁, …, Πα_m)]`, where
/// `λ_m = Σ_{j+k=m} (−1)^{(k−1)(j+|a₁…a_j|)} Qλ_j(a₁…a_j) ∧ Qλ_k(a_{j+1}…a_m)` with `Qλ₁ = −id`.
/// Degrees in the signs are form degree plus `shift`.
pub struct AInfinity<'a> {
    ctx: &'a BggContext,
    pairing: &'a PairingData,
    shift: usize,
}

impl<'a> AInfinity<'a> {
    pub fn new(ctx: &'a BggContext, pairing: &'a PairingData, shift: usize) -> Result<Self> {
        for rep in [&pairing.source1, &pairing.source2, &pairing.target] {
            if !rep.space().same_labels(ctx.rep().space()) {
                return Err(Error::SpaceMismatch(format!("pairing module {} is not the context algebra", rep.name())));
            }
        }
        Ok(AInfinity { ctx, pairing, shift })
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    fn wedge(&self, a: &Graded, b: &Graded) -> Result<Option<Graded>> {
        let k = a.0 + b.0;
        if k > self.ctx.n() {
            return Ok(None);
        }
        let v = wedge_sections(
            self.pairing,
            self.ctx.forms(),
            a.0,
            self.ctx.chain_sections(a.0),
            &a.1,
            b.0,
            self.ctx.chain_sections(b.0),
            &b.1,
            self.ctx.chain_sections(k),
        )?;
        Ok(Some((k, v)))
    }

    fn q_lambda(&self, args: &[Graded]) -> Result<Option<Graded>> {
        if args.len() == 1 {
            return Ok(Some((args[0].0, args[0].1.scale(&Rational::from_int(-1)))));
        }
        let Some((k, v)) = self.lambda(args)? else { return Ok(None) };
        Ok(self.ctx.primal().apply_q(k, &v)?.map(|q| (k - 1, q)))
    }

    /// Chain-level `λ_m` on chain sections; `None` when it lands outside `0..=n`.
    pub fn lambda(&self, args: &[Graded]) -> Result<Option<Graded>> {
        let m = args.len();
        if m < 2 {
            return Err(Error::Unsupported("λ_m is defined for m ≥ 2".into()));
        }
        let total: i64 = args.iter().map(|a| a.0 as i64).sum::<i64>() - (m as i64 - 2);
        if total < 0 || total > self.ctx.n() as i64 {
            return Ok(None);
        }
        let deg = total as usize;
        let mut acc = SparseVec::zero(self.ctx.chain_sections(deg).dim());
        for j in 1..m {
            let k = m - j;
            let dj: i64 = args[..j].iter().map(|a| (a.0 + self.shift) as i64).sum();
            let sign = parity((k as i64 - 1) * (j as i64 + dj));
            let (Some(left), Some(right)) = (self.q_lambda(&args[..j])?, self.q_lambda(&args[j..])?) else { continue };
            if let Some((d, w)) = self.wedge(&left, &right)? {
                debug_assert_eq!(d, deg);
                acc = acc.axpy(&sign, &w);
            }
        }
        Ok(Some((deg, acc)))
    }

    /// `μ_m` on homology sections.
    pub fn mu(&self, alphas: &[Graded]) -> Result<Option<Graded>> {
        match alphas.len() {
            0 => Err(Error::Unsupported("μ₀ is the curvature, which vanishes on the flat model".into())),
            1 => Ok(self.ctx.primal().apply_bgg(alphas[0].0, &alphas[0].1)?.map(|v| (alphas[0].0 + 1, v))),
            _ => {
                let reps = alphas
                    .iter()
                    .map(|(k, a)| Ok((*k, self.ctx.primal().apply_represent(*k, a)?)))
                    .collect::<Result<Vec<_>>>()?;
                match self.lambda(&reps)? {
                    Some((k, v)) => Ok(Some((k, self.ctx.primal().apply_project(k, &v)?))),
                    None => Ok(None),
                }
            }
        }
    }

    /// Signed summands `(−1)^{k+ℓ+kℓ+k|α₁…α_ℓ|} μ_j(α₁…α_ℓ, μ_k(α_{ℓ+1}…α_{ℓ+k}), …)` of the
    /// relation of arity `m = alphas.len()`, with `μ₀ = 0`. Empty when the relation lands
    /// outside the complex.
    pub fn relation_terms(&self, alphas: &[Graded]) -> Result<Vec<(String, SparseVec)>> {
        let m = alphas.len();
        let target = alphas.iter().map(|a| a.0).sum::<usize>() + 3;
        let Some(deg) = target.checked_sub(m) else { return Ok(Vec::new()) };
        if deg > self.ctx.n() {
            return Ok(Vec::new());
        }
        let dim = self.ctx.homology_sections(deg).dim();
        let mut terms = Vec::new();
        for k in 1..=m {
            let j = m + 1 - k;
            for l in 0..j {
                let dl: i64 = alphas[..l].iter().map(|a| (a.0 + self.shift) as i64).sum();
                let (ki, li) = (k as i64, l as i64);
                let sign = parity(ki + li + ki * li + ki * dl);
                let label = format!("μ{j}(…μ{k} at {l}…)");
                let inner = self.mu(&alphas[l..l + k])?;
                let value = match inner {
                    Some(inner) => {
                        let mut args: Vec<Graded> = alphas[..l].to_vec();
                        args.push(inner);
                        args.extend_from_slice(&alphas[l + k..]);
                        self.mu(&args)?.map(|(d, v)| {
                            debug_assert_eq!(d, deg);
                            v.scale(&sign)
                        })
                    }
                    None => None,
                };
                terms.push((label, value.unwrap_or_else(|| SparseVec::zero(dim))));
            }
        }
        Ok(terms)
    }

    pub fn relation_residual(&self, alphas: &[Graded]) -> Result<Option<SparseVec>> {
        let terms = self.relation_terms(alphas)?;
        let mut it = terms.into_iter().map(|(_, v)| v);
        let Some(first) = it.next() else { return Ok(None) };
        Ok(Some(it.fold(first, |acc, v| acc.add(&v))))
    }
}

/// Symbolic expansion of `λ_m` into wedge/`Q` words, one per summand, with `Qλ₁ = −id`.
pub fn lambda_expansion(m: usize) -> Vec<String> {
    fn q_words(from: usize, len: usize) -> Vec<String> {
        if len == 1 {
            vec![format!("a{}", from + 1)]
        } else {
            words(from, len).into_iter().map(|w| format!("Q({w})")).collect()
        }
    }
    fn words(from: usize, len: usize) -> Vec<String> {
        let mut out = Vec::new();
        for j in 1..len {
            for l in q_words(from, j) {
                for r in q_words(from + j, len - j) {
                    out.push(format!("{l}∧{r}"));
                }
            }
        }
        out
    }
    if m < 2 {
        return Vec::new();
    }
    words(0, m)
}
