//! Identities of the twisted complexes, checked on symbols (equivalently, on the truncated matrices).

use super::{BggContext, SectionSampler, TwistedComplex};
use crate::flat::FlatOperator;
use crate::homology::checks::CheckResult;
use crate::exact::Rational;

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn expect_zero(op: &FlatOperator, what: impl FnOnce() -> String) -> CheckResult {
    if op.is_zero() {
        Ok(())
    } else {
        Err(what())
    }
}

fn expect_eq(lhs: &FlatOperator, rhs: &FlatOperator, what: impl FnOnce() -> String) -> CheckResult {
    expect_zero(&lhs.sub(rhs).map_err(err)?, what)
}

fn levels(tc: &TwistedComplex) -> std::ops::RangeInclusive<usize> {
    0..=tc.n()
}

/// `a ∘ □_η = □_η ∘ a`.
pub fn quabla_eta_commutes_with_a(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let (Some(t), Some(a)) = (tc.a_target(k), tc.a(k)) else { continue };
        let lhs = a.compose(tc.quabla_eta(k)).map_err(err)?;
        let rhs = tc.quabla_eta(t).compose(a).map_err(err)?;
        expect_eq(&lhs, &rhs, || format!("a∘□_η ≠ □_η∘a on level {k}"))?;
    }
    Ok(())
}

/// Largest nilpotency index of `N` over all levels; fails beyond `D + 1`.
pub fn max_nilpotency_index(tc: &TwistedComplex) -> Result<usize, String> {
    let mut worst = 0;
    for k in levels(tc) {
        worst = worst.max(tc.nilpotency_index(k).map_err(err)?);
    }
    Ok(worst)
}

/// `□_η ∘ Q = a` and `Q ∘ □_η = a`, so the Neumann series inverts `□_η` on both sides on `im a`.
pub fn neumann_inverse_two_sided(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let (Some(t), Some(a), Some(q)) = (tc.a_target(k), tc.a(k), tc.q(k).map_err(err)?) else { continue };
        let left = tc.quabla_eta(t).compose(q).map_err(err)?;
        expect_eq(&left, a, || format!("□_η∘□_η⁻¹ ≠ id on im a from level {k}"))?;
        let right = q.compose(tc.quabla_eta(k)).map_err(err)?;
        expect_eq(&right, a, || format!("□_η⁻¹∘□_η ≠ id on im a from level {k}"))?;
    }
    Ok(())
}

/// `Q` from the inverse on `im a` equals `Q` from the inverse on the quotient `C_k / ker b`.
pub fn q_constructions_agree(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let (Some(q), Some(qq)) = (tc.q(k).map_err(err)?, tc.quotient_q(k).map_err(err)?) else { continue };
        expect_eq(q, &qq, || format!("the two Q constructions differ on level {k}"))?;
    }
    Ok(())
}

/// `Π ∘ a = 0`.
pub fn pi_kills_image(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let (Some(t), Some(a)) = (tc.a_target(k), tc.a(k)) else { continue };
        expect_zero(&tc.pi(t).map_err(err)?.compose(a).map_err(err)?, || format!("Π∘a ≠ 0 from level {k}"))?;
    }
    Ok(())
}

/// `a ∘ Π = 0`.
pub fn pi_lands_in_kernel(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let Some(a) = tc.a(k) else { continue };
        expect_zero(&a.compose(tc.pi(k).map_err(err)?).map_err(err)?, || format!("a∘Π ≠ 0 on level {k}"))?;
    }
    Ok(())
}

/// On `ker a = H ⊕ im a`, `proj ∘ Π` agrees with the fiber projection to homology.
pub fn pi_identity_on_homology(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let ph = tc.project_harmonic(k);
        let eh = tc.embed_harmonic(k);
        let lhs = tc.project(k).map_err(err)?.compose(eh).map_err(err)?;
        expect_eq(&lhs, &ph.compose(eh).map_err(err)?, || format!("proj∘Π ≠ proj on harmonic sections of level {k}"))?;
    }
    for k in levels(tc) {
        let (Some(t), Some(a)) = (tc.a_target(k), tc.a(k)) else { continue };
        let lhs = tc.project(t).map_err(err)?.compose(a).map_err(err)?;
        let rhs = tc.project_harmonic(t).compose(a).map_err(err)?;
        expect_eq(&lhs, &rhs, || format!("proj∘Π ≠ proj on im a into level {t}"))?;
    }
    Ok(())
}

/// `Π ∘ Π = Π`.
pub fn pi_idempotent(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let pi = tc.pi(k).map_err(err)?;
        expect_eq(&pi.compose(pi).map_err(err)?, pi, || format!("Π² ≠ Π on level {k}"))?;
    }
    Ok(())
}

/// `D_η ∘ Π = Π ∘ D_η`.
pub fn pi_commutes_with_d(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let (Some(t), Some(d)) = (tc.d_target(k), tc.d(k)) else { continue };
        let lhs = d.compose(tc.pi(k).map_err(err)?).map_err(err)?;
        let rhs = tc.pi(t).map_err(err)?.compose(d).map_err(err)?;
        expect_eq(&lhs, &rhs, || format!("D_η∘Π ≠ Π∘D_η from level {k}"))?;
    }
    Ok(())
}

/// `Π ∘ □_η = 0` and `□_η ∘ Π = 0`.
pub fn pi_kills_quabla(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let pi = tc.pi(k).map_err(err)?;
        let qe = tc.quabla_eta(k);
        expect_zero(&pi.compose(qe).map_err(err)?, || format!("Π∘□_η ≠ 0 on level {k}"))?;
        expect_zero(&qe.compose(pi).map_err(err)?, || format!("□_η∘Π ≠ 0 on level {k}"))?;
    }
    Ok(())
}

/// The six identities of the flat Π-calculus, by name.
pub fn pi_calculus(tc: &TwistedComplex) -> Vec<(&'static str, CheckResult)> {
    vec![
        ("Π∘a = 0", pi_kills_image(tc)),
        ("a∘Π = 0", pi_lands_in_kernel(tc)),
        ("proj∘Π = proj on ker a", pi_identity_on_homology(tc)),
        ("Π² = Π", pi_idempotent(tc)),
        ("D_η∘Π = Π∘D_η", pi_commutes_with_d(tc)),
        ("Π∘□_η = □_η∘Π = 0", pi_kills_quabla(tc)),
    ]
}

/// `proj ∘ Π ∘ repr = id`.
pub fn transfer_maps(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let comp = tc.project(k).map_err(err)?.compose(tc.represent(k).map_err(err)?).map_err(err)?;
        let id = FlatOperator::identity(tc.harmonic_space(k).clone());
        expect_eq(&comp, &id, || format!("proj∘Π∘repr ≠ id on level {k}"))?;
    }
    Ok(())
}

/// `Π(repr h + a x) = Π repr h` on seeded sections `h`, `x`.
pub fn representative_independence(tc: &TwistedComplex, sampler: &mut SectionSampler, samples: usize) -> CheckResult {
    for k in levels(tc) {
        let Some(s) = (0..=tc.n()).find(|&s| tc.a_target(s) == Some(k)) else { continue };
        let a = tc.a(s).expect("a from the source level");
        for _ in 0..samples {
            let h = sampler.section(tc.harmonic_space(k), tc.max_degree());
            let x = sampler.section(tc.section_space(s), tc.max_degree());
            let lift = tc.embed_harmonic(k).apply(&h).add(&a.apply(&x));
            let lhs = tc.apply_pi(k, &lift).map_err(err)?;
            if lhs != tc.apply_represent(k, &h).map_err(err)? {
                return Err(format!("Π of a shifted lift differs on level {k}"));
            }
        }
    }
    Ok(())
}

/// `D ∘ D = 0` on homology sections.
pub fn bgg_squared_zero(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let Some(t) = tc.d_target(k) else { continue };
        let (Some(d1), Some(d2)) = (tc.bgg(k).map_err(err)?, tc.bgg(t).map_err(err)?) else { continue };
        expect_zero(&d2.compose(d1).map_err(err)?, || format!("D∘D ≠ 0 from level {k}"))?;
    }
    Ok(())
}

/// `proj∘D_η∘Π∘repr = proj∘Π∘D_η∘Π∘repr`.
pub fn bgg_simplification(tc: &TwistedComplex) -> CheckResult {
    for k in levels(tc) {
        let (Some(d), Some(full)) = (tc.bgg(k).map_err(err)?, tc.bgg_full(k).map_err(err)?) else { continue };
        expect_eq(d, &full, || format!("simplified D differs from proj∘Π∘D_η∘Π∘repr on level {k}"))?;
    }
    Ok(())
}

/// `Π̂_k` is the formal adjoint of `Π_k`.
pub fn dual_pi_is_adjoint(ctx: &BggContext) -> CheckResult {
    let dual = ctx.dual().map_err(err)?;
    for k in 0..=ctx.n() {
        let s = dual.section_space(k).clone();
        let adj = ctx.primal().pi(k).map_err(err)?.formal_adjoint(s.clone(), s).map_err(err)?;
        expect_eq(dual.pi(k).map_err(err)?, &adj, || format!("Π̂ ≠ Π* on level {k}"))?;
    }
    Ok(())
}

/// The dual differential operator equals `−(d^g)*`, computed from the dual fibers directly.
pub fn d_adjoint_two_ways(ctx: &BggContext) -> CheckResult {
    let dual = ctx.dual().map_err(err)?;
    for k in 0..ctx.n() {
        let d = ctx.primal().d(k).expect("d^g below the top degree");
        let adj = d
            .formal_adjoint(dual.section_space(k + 1).clone(), dual.section_space(k).clone())
            .map_err(err)?
            .scale(&Rational::from_int(-1));
        let direct = dual.d(k + 1).expect("δ^η above degree zero");
        expect_eq(direct, &adj, || format!("δ^η ≠ −(d^g)* from dual level {}", k + 1))?;
    }
    Ok(())
}

/// For trivial coefficients `Q = 0`, `Π = id` and `D` is the exterior derivative.
pub fn trivial_coefficients(ctx: &BggContext) -> CheckResult {
    let tc = ctx.primal();
    for k in levels(tc) {
        if let Some(q) = tc.q(k).map_err(err)? {
            expect_zero(q, || format!("Q ≠ 0 on level {k}"))?;
        }
        let id = FlatOperator::identity(tc.section_space(k).clone());
        expect_eq(tc.pi(k).map_err(err)?, &id, || format!("Π ≠ id on level {k}"))?;
        if let Some(d) = tc.bgg(k).map_err(err)? {
            let ext = ctx.model().coordinate_exterior_derivative(k).map_err(err)?;
            let eh = tc.embed_harmonic(tc.d_target(k).expect("target level"));
            let lhs = eh.compose(d).map_err(err)?;
            let rhs = ext.compose(tc.embed_harmonic(k)).map_err(err)?;
            expect_eq(&lhs, &rhs, || format!("D ≠ exterior derivative on level {k}"))?;
        }
    }
    Ok(())
}
