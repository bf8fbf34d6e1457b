use std::sync::Arc;

use bgg_core::bgg::{gauge_obstruction, BggContext, PairingData, SectionSampler};
use bgg_core::lie::conformal;
use bgg_core::Error;

#[test]
fn gauge_deformations_are_unobstructed_to_second_order() {
    let ga = Arc::new(conformal(3, 0).unwrap());
    let c = BggContext::from_expr(ga.clone(), "adjoint", 3).unwrap();
    let br = PairingData::bracket(c.rep().clone(), &ga).unwrap();
    let mut s = SectionSampler::new(2);
    for _ in 0..3 {
        let f = s.section(c.homology_sections(0), 2);
        let (a, rep) = gauge_obstruction(&c, &br, &f).unwrap();
        assert!(c.primal().apply_bgg(1, &a).unwrap().unwrap().is_zero());
        assert!(rep.is_closed());
        let (_, again) = gauge_obstruction(&c, &br, &f).unwrap();
        assert_eq!(rep.is_exact(), again.is_exact());
        eprintln!("exact: {}", rep.is_exact());
    }
}

#[test]
fn non_closed_input_rejected() {
    let ga = Arc::new(conformal(3, 0).unwrap());
    let c = BggContext::from_expr(ga.clone(), "adjoint", 3).unwrap();
    let br = PairingData::bracket(c.rep().clone(), &ga).unwrap();
    let mut s = SectionSampler::new(1);
    let a = s.section(c.homology_sections(1), 3);
    match bgg_core::bgg::deformation_obstruction(&c, &br, &a) {
        Err(Error::Rejected(_)) => {}
        other => panic!("expected rejection, got {:?}", other.map(|r| r.is_exact())),
    }
}
