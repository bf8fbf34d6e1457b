use std::sync::Arc;

use bgg_core::bgg::{checks, BggContext, CapProduct, SectionSampler};
use bgg_core::lie::{conformal, projective};

#[test]
fn dual_pi_projective() {
    let c = BggContext::from_expr(Arc::new(projective(2).unwrap()), "standard", 3).unwrap();
    checks::dual_pi_is_adjoint(&c).unwrap();
    checks::d_adjoint_two_ways(&c).unwrap();
    let dual = c.dual().unwrap();
    checks::bgg_squared_zero(dual).unwrap();
    for (name, r) in checks::pi_calculus(dual) {
        r.unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn cap_adjointness_conformal_standard() {
    let c = BggContext::from_expr(Arc::new(conformal(3, 0).unwrap()), "standard", 3).unwrap();
    checks::dual_pi_is_adjoint(&c).unwrap();
    let cap = CapProduct::new(&c).unwrap();
    let dual = c.dual().unwrap();
    let mut s = SectionSampler::new(8);
    for _ in 0..5 {
        let a = s.section(c.homology_sections(0), 1);
        let b = s.section(dual.harmonic_space(1), 2);
        assert!(cap.adjointness_residual(0, &a, &b).unwrap().is_zero());
        assert!(!cap.divergence(&cap.cap(0, &a, 1, &b).unwrap()).unwrap().is_zero());
        let b0 = s.section(dual.harmonic_space(0), 2);
        assert_eq!(cap.pairing(0, &a, &b0).unwrap(), cap.fiber_pairing(0, &a, &b0).unwrap());
    }
}
