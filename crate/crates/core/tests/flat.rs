use std::sync::Arc;

use bgg_core::exact::{OperatorMatrix, Rational, SparseMatrix};
use bgg_core::flat::{checks, lift_fiberwise, FlatModel, FlatOperator};
use bgg_core::homology::ChainComplexData;
use bgg_core::lie::{build_representation, conformal, g2, projective, GradedAlgebra, RepExpr};
use bgg_core::Error;

fn model(ga: GradedAlgebra, rep: &str, d: usize) -> FlatModel {
    let ga = Arc::new(ga);
    let r = build_representation(&RepExpr::parse(rep).unwrap(), &ga).unwrap();
    FlatModel::new(Arc::new(ChainComplexData::new(ga, Arc::new(r)).unwrap()), d).unwrap()
}

#[test]
fn section_space_dimensions() {
    let m = model(conformal(3, 0).unwrap(), "standard", 2);
    assert_eq!(m.section_space(0).dim(), 50);
    assert_eq!(m.section_space(1).dim(), 150);
    let m = model(projective(2).unwrap(), "trivial", 3);
    assert_eq!(m.section_space(0).dim(), 10);
}

#[test]
fn coordinate_derivative_single_term() {
    let m = model(conformal(3, 0).unwrap(), "standard", 2);
    let s1 = m.section_space(1);
    let input = s1.section(&[(vec![1, 0, 0], "ε(2)⊗v0".into(), Rational::one())]).unwrap();
    let want = m.section_space(2).section(&[(vec![0, 0, 0], "ε(1,2)⊗v0".into(), Rational::one())]).unwrap();
    assert_eq!(m.coordinate_exterior_derivative(1).unwrap().apply(&input), want);
    // constants are killed
    let c = s1.section(&[(vec![0, 0, 0], "ε(3)⊗v2".into(), Rational::from_int(7))]).unwrap();
    assert!(m.coordinate_exterior_derivative(1).unwrap().apply(&c).is_zero());
}

#[test]
fn trivial_coefficients_give_de_rham() {
    let m = model(conformal(3, 0).unwrap(), "trivial", 3);
    for k in 0..3 {
        assert_eq!(m.twisted_de_rham(k).unwrap(), m.coordinate_exterior_derivative(k).unwrap());
    }
    let d0 = m.coordinate_exterior_derivative(0).unwrap().matrix();
    let d1 = m.coordinate_exterior_derivative(1).unwrap().matrix();
    assert!(d1.mul(&d0).is_zero());
    let x1x2 = m.section_space(0).section(&[(vec![1, 1, 0], "ε()⊗1".into(), Rational::one())]).unwrap();
    let grad = m.section_space(1).section(&[
        (vec![0, 1, 0], "ε(1)⊗1".into(), Rational::one()),
        (vec![1, 0, 0], "ε(2)⊗1".into(), Rational::one()),
    ]);
    assert_eq!(m.coordinate_exterior_derivative(0).unwrap().apply(&x1x2), grad.unwrap());
}

#[test]
fn flat_identities_conformal_standard() {
    let m = model(conformal(3, 0).unwrap(), "standard", 4);
    checks::twisted_de_rham_squared_zero(&m).unwrap();
    checks::lifted_delta_squared_zero(&m).unwrap();
    checks::lifted_cartan_identity(&m).unwrap();
    checks::degree_filtration(&m).unwrap();
    for k in 0..2 {
        let a = m.twisted_de_rham(k + 1).unwrap().matrix();
        let b = m.twisted_de_rham(k).unwrap().matrix();
        assert!(a.mul(&b).is_zero());
    }
}

#[test]
fn flat_identities_projective_adjoint() {
    let m = model(projective(2).unwrap(), "adjoint", 3);
    checks::twisted_de_rham_squared_zero(&m).unwrap();
    checks::lifted_cartan_identity(&m).unwrap();
}

#[test]
fn twistor_connection_on_functions() {
    // d^g f = Σ ε^i ⊗ (∂_i f + e_i·f)
    let m = model(conformal(3, 0).unwrap(), "standard", 2);
    let cx = m.chains().clone();
    let s0 = m.section_space(0);
    let f = s0.section(&[(vec![0, 1, 0], "ε()⊗v1".into(), Rational::new(2, 3))]).unwrap();
    let mut want = m.coordinate_exterior_derivative(0).unwrap().apply(&f);
    for i in 0..3 {
        let rho = cx.rho_e(i).unwrap();
        let wedge = cx.wedge_chain(0, i);
        want = want.add(&FlatOperator::lift(&wedge.mul(rho), s0.clone(), m.section_space(1).clone()).unwrap().apply(&f));
    }
    assert_eq!(m.twisted_de_rham(0).unwrap().apply(&f), want);
}

#[test]
fn lift_fiberwise_blocks() {
    let m = model(conformal(3, 0).unwrap(), "standard", 2);
    let cx = m.chains();
    let delta = OperatorMatrix::new(cx.space(1).clone(), cx.space(0).clone(), cx.delta(1).clone()).unwrap();
    let lifted = lift_fiberwise(&delta, m.section_space(1)).unwrap();
    let mat = lifted.matrix();
    assert_eq!(mat.nnz(), 10 * cx.delta(1).nnz());
    let id = OperatorMatrix::identity(cx.space(1).clone());
    let l = lift_fiberwise(&id, m.section_space(1)).unwrap();
    assert_eq!(l.matrix(), SparseMatrix::identity(150));
    assert!(lift_fiberwise(&delta, m.section_space(0)).is_err());
}

#[test]
fn non_abelian_rejected() {
    let ga = Arc::new(g2().unwrap());
    let r = build_representation(&RepExpr::Trivial, &ga).unwrap();
    let cx = Arc::new(ChainComplexData::new(ga, Arc::new(r)).unwrap());
    assert_eq!(FlatModel::new(cx, 2).unwrap_err(), Error::NotAbelian);
}
