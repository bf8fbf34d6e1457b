//! Section-level identities on random sections, for the primal and dual twisted complexes.

use std::sync::{Arc, LazyLock};

use bgg_core::bgg::{BggContext, PairingData, Product, SectionSampler, TwistedComplex};
use bgg_core::io::{read_section, write_section};
use bgg_core::lie::{conformal, projective};
use proptest::prelude::*;

const D: usize = 3;

static CONFORMAL: LazyLock<BggContext> =
    LazyLock::new(|| BggContext::from_expr(Arc::new(conformal(3, 0).unwrap()), "standard", D).unwrap());
static PROJECTIVE: LazyLock<BggContext> =
    LazyLock::new(|| BggContext::from_expr(Arc::new(projective(2).unwrap()), "standard", D).unwrap());
static TENSOR: LazyLock<(PairingData, BggContext)> = LazyLock::new(|| {
    let c = &*CONFORMAL;
    let ga = c.graded_algebra();
    let vv = PairingData::tensor(c.rep().clone(), c.rep().clone(), ga).unwrap();
    let t2 = BggContext::new(ga.clone(), vv.target.clone(), D).unwrap();
    (vv, t2)
});

fn context(projective: bool) -> &'static BggContext {
    if projective {
        &PROJECTIVE
    } else {
        &CONFORMAL
    }
}

fn complex(projective: bool, dual: bool) -> &'static TwistedComplex {
    let c = context(projective);
    if dual {
        c.dual().unwrap()
    } else {
        c.primal()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn algebraic_and_twisted_differentials_square_to_zero(seed: u64, proj: bool, dual: bool, k in 0usize..4, deg in 0..=D) {
        let tc = complex(proj, dual);
        let k = k % (tc.n() + 1);
        let v = SectionSampler::new(seed).section(tc.section_space(k), deg);
        if let (Some(a), Some(t)) = (tc.a(k), tc.a_target(k)) {
            if let Some(a2) = tc.a(t) {
                prop_assert!(a2.apply(&a.apply(&v)).is_zero());
            }
        }
        if let (Some(d), Some(t)) = (tc.d(k), tc.d_target(k)) {
            if let Some(d2) = tc.d(t) {
                prop_assert!(d2.apply(&d.apply(&v)).is_zero());
            }
        }
    }

    #[test]
    fn pi_is_a_differential_projection(seed: u64, proj: bool, dual: bool, k in 0usize..4, deg in 0..=D) {
        let tc = complex(proj, dual);
        let k = k % (tc.n() + 1);
        let v = SectionSampler::new(seed).section(tc.section_space(k), deg);
        let p = tc.apply_pi(k, &v).unwrap();
        prop_assert_eq!(&tc.apply_pi(k, &p).unwrap(), &p);
        if let Some(a) = tc.a(k) {
            prop_assert!(a.apply(&p).is_zero());
        }
        if let (Some(d), Some(t)) = (tc.d(k), tc.d_target(k)) {
            prop_assert_eq!(d.apply(&p), tc.apply_pi(t, &d.apply(&v)).unwrap());
        }
    }

    #[test]
    fn represent_then_project_is_identity(seed: u64, proj: bool, dual: bool, k in 0usize..4, deg in 0..=D) {
        let tc = complex(proj, dual);
        let k = k % (tc.n() + 1);
        let h = SectionSampler::new(seed).section(tc.harmonic_space(k), deg);
        let r = tc.apply_represent(k, &h).unwrap();
        prop_assert_eq!(tc.apply_project(k, &r).unwrap(), h);
    }

    #[test]
    fn bgg_sequence_is_a_complex(seed: u64, proj: bool, dual: bool, k in 0usize..4, deg in 0..=D) {
        let tc = complex(proj, dual);
        let k = k % (tc.n() + 1);
        let h = SectionSampler::new(seed).section(tc.harmonic_space(k), deg);
        if let (Some(dh), Some(t)) = (tc.apply_bgg(k, &h).unwrap(), tc.d_target(k)) {
            if let Some(ddh) = tc.apply_bgg(t, &dh).unwrap() {
                prop_assert!(ddh.is_zero());
            }
        }
    }

    #[test]
    fn neumann_series_inverts_quabla_eta(seed: u64, proj: bool, k in 0usize..4, deg in 0..=D) {
        let tc = complex(proj, false);
        let k = k % (tc.n() + 1);
        let Some(t) = tc.a_target(k) else { return Ok(()) };
        let w = SectionSampler::new(seed).section(tc.section_space(k), deg);
        let b = tc.a(k).unwrap().apply(&w);
        let u = tc.apply_neumann_inverse(t, &b).unwrap();
        prop_assert_eq!(tc.quabla_eta(t).apply(&u), b);
    }

    #[test]
    fn cup_satisfies_leibniz(seed: u64, k in 0usize..2, l in 0usize..2) {
        let c = &*CONFORMAL;
        let (vv, t2) = &*TENSOR;
        let prod = Product::new(vv, c, c, t2).unwrap();
        let mut sm = SectionSampler::new(seed);
        let a = sm.sparse_section(c.homology_sections(k), 1, 3);
        let b = sm.sparse_section(c.homology_sections(l), D - 1, 3);
        let r = prod.leibniz_residual(k, &a, l, &b).unwrap().expect("bidegree inside the complex");
        prop_assert!(r.is_zero());
    }

    #[test]
    fn sections_round_trip_through_text(seed: u64, proj: bool, k in 0usize..4, terms in 0usize..12) {
        let c = context(proj);
        let s = c.chain_sections(k % (c.n() + 1));
        let v = SectionSampler::new(seed).sparse_section(s, D, terms);
        prop_assert_eq!(read_section(s, &write_section(s, &v)).unwrap(), v);
    }
}
