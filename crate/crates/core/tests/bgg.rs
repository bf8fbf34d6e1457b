use std::sync::Arc;

use bgg_core::bgg::{checks, stabilization_degree, BggContext, SectionSampler};
use bgg_core::exact::{elim, Rational, SparseMatrix, SparseVec};
use bgg_core::lie::{conformal, projective, GradedAlgebra};

fn ctx(ga: GradedAlgebra, rep: &str, d: usize) -> BggContext {
    BggContext::from_expr(Arc::new(ga), rep, d).unwrap()
}

fn assert_suite(c: &BggContext) {
    let tc = c.primal();
    checks::quabla_eta_commutes_with_a(tc).unwrap();
    assert!(checks::max_nilpotency_index(tc).unwrap() <= c.max_degree() + 1);
    checks::neumann_inverse_two_sided(tc).unwrap();
    checks::q_constructions_agree(tc).unwrap();
    for (name, r) in checks::pi_calculus(tc) {
        r.unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    checks::transfer_maps(tc).unwrap();
    checks::bgg_simplification(tc).unwrap();
    checks::bgg_squared_zero(tc).unwrap();
}

#[test]
fn trivial_coefficients_reduce_to_de_rham() {
    let c = ctx(conformal(3, 0).unwrap(), "trivial", 3);
    checks::trivial_coefficients(&c).unwrap();
    checks::bgg_squared_zero(c.primal()).unwrap();
}

#[test]
fn pi_calculus_conformal_standard_low_degree() {
    let c = ctx(conformal(3, 0).unwrap(), "standard", 2);
    assert_suite(&c);
    let mut s = SectionSampler::new(7);
    checks::representative_independence(c.primal(), &mut s, 2).unwrap();
}

#[test]
fn twistor_kernel_conformal_standard() {
    let c = ctx(conformal(3, 0).unwrap(), "standard", 4);
    let (dims, basis) = c.primal().bgg_kernel(0).unwrap();
    assert_eq!(dims, vec![1, 4, 5, 5, 5]);
    assert_eq!(stabilization_degree(&dims), Some(2));
    assert_eq!(c.primal().bgg(0).unwrap().unwrap().order(), Some(2));
    let h = c.homology_sections(0);
    let label = h.fiber().label(0).to_string();
    let one = Rational::one();
    let mut want = vec![h.section(&[(vec![0, 0, 0], label.clone(), one.clone())]).unwrap()];
    for i in 0..3 {
        let mut e = vec![0, 0, 0];
        e[i] = 1;
        want.push(h.section(&[(e, label.clone(), one.clone())]).unwrap());
    }
    let sq: Vec<_> = (0..3)
        .map(|i| {
            let mut e = vec![0, 0, 0];
            e[i] = 2;
            (e, label.clone(), one.clone())
        })
        .collect();
    want.push(h.section(&sq).unwrap());
    let span = |vs: &[SparseVec]| elim::rank(&SparseMatrix::from_columns(h.dim(), vs.to_vec()));
    let both: Vec<_> = basis.iter().chain(&want).cloned().collect();
    assert_eq!((span(&basis), span(&want), span(&both)), (5, 5, 5));
}

#[test]
fn penrose_sequence() {
    let c = ctx(conformal(3, 0).unwrap(), "ext(standard,3)", 4);
    checks::bgg_squared_zero(c.primal()).unwrap();
    assert_eq!(c.primal().bgg(0).unwrap().unwrap().order(), Some(1));
    assert_eq!(c.primal().bgg(2).unwrap().unwrap().order(), Some(1));
}

#[test]
fn nontrivial_homotopy() {
    let c = ctx(conformal(3, 0).unwrap(), "standard", 2);
    assert!(!c.primal().q(1).unwrap().unwrap().is_zero());
    let id = bgg_core::flat::FlatOperator::identity(c.chain_sections(1).clone());
    assert_ne!(c.primal().pi(1).unwrap(), &id);
}

#[test]
fn suites_at_degree_four() {
    for (ga, rep) in [(conformal(3, 0).unwrap(), "standard"), (projective(2).unwrap(), "standard")] {
        let c = ctx(ga, rep, 4);
        assert_suite(&c);
    }
}

#[test]
fn kernel_dimensions() {
    for (ga, rep, want, order) in [
        (conformal(3, 0).unwrap(), "adjoint", 10, 1),
        (projective(2).unwrap(), "standard", 3, 2),
    ] {
        let c = ctx(ga, rep, 4);
        let (dims, _) = c.primal().bgg_kernel(0).unwrap();
        assert_eq!(*dims.last().unwrap(), want);
        assert_eq!(c.primal().bgg(0).unwrap().unwrap().order(), Some(order));
    }
}
