use std::sync::Arc;

use bgg_core::exact::{elim, Rational, SparseVec};
use bgg_core::homology::{checks, chain_space, hodge_split, homology_module, ChainComplexData};
use bgg_core::lie::{build_representation, conformal, g2, projective, GradedAlgebra, RepExpr};

fn complex(ga: &Arc<GradedAlgebra>, rep: &str) -> ChainComplexData {
    let r = build_representation(&RepExpr::parse(rep).unwrap(), ga).unwrap();
    ChainComplexData::new(ga.clone(), Arc::new(r)).unwrap()
}

fn all_checks(ga: &Arc<GradedAlgebra>, rep: &str) -> Vec<usize> {
    let cx = complex(ga, rep);
    checks::delta_squared_zero(&cx).unwrap();
    checks::d_squared_zero(&cx).unwrap();
    checks::cartan_identity(&cx).unwrap();
    checks::p_equivariance(&cx).unwrap();
    checks::m_star_trivial_on_homology(&cx).unwrap();
    for k in 0..=cx.n() {
        let s = hodge_split(&cx, k).unwrap();
        let (a, h, b) = s.dims();
        assert_eq!(a + h + b, cx.dim(k));
    }
    let dims = checks::homology_dims(&cx);
    assert_eq!(checks::euler_characteristic(&dims), 0);
    let dual = complex(ga, &format!("dual({rep})"));
    checks::poincare_duality(&cx, &dual).unwrap();
    dims
}

#[test]
fn conformal_three_standard() {
    let ga = Arc::new(conformal(3, 0).unwrap());
    assert_eq!(all_checks(&ga, "standard"), vec![1, 5, 5, 1]);
    let cx = complex(&ga, "standard");
    assert_eq!((0..=3).map(|k| cx.dim(k)).collect::<Vec<_>>(), vec![5, 15, 15, 5]);
    // δ_1 has rank dim(m*·V) = 4 since m* annihilates only the lowest weight line.
    assert_eq!(elim::rank(cx.delta(1)), 4);
    assert_eq!(hodge_split(&cx, 1).unwrap().dims(), (4, 5, 6));
}

#[test]
fn conformal_three_trivial_and_exterior() {
    let ga = Arc::new(conformal(3, 0).unwrap());
    assert_eq!(all_checks(&ga, "trivial"), vec![1, 3, 3, 1]);
    let cx = complex(&ga, "trivial");
    for k in 0..=3 {
        assert!(cx.delta(k).is_zero());
        assert!(cx.d(k).unwrap().is_zero());
    }
    all_checks(&ga, "adjoint");
    all_checks(&ga, "ext(standard,2)");
    all_checks(&ga, "ext(standard,3)");
}

#[test]
fn conformal_four() {
    let ga = Arc::new(conformal(4, 0).unwrap());
    all_checks(&ga, "standard");
    let dims = all_checks(&ga, "adjoint");
    assert_eq!(dims[2], 10);
    let v = build_representation(&RepExpr::parse("ext(standard,2)").unwrap(), &ga).unwrap();
    assert_eq!(v.dim(), 15);
}

#[test]
fn projective_and_g2() {
    let ga = Arc::new(projective(2).unwrap());
    all_checks(&ga, "standard");
    let ga = Arc::new(g2().unwrap());
    let dims = all_checks(&ga, "trivial");
    assert_eq!(dims[0], 1);
    assert_eq!(dims[1], 2);
    let sp = chain_space(&ga, &build_representation(&RepExpr::Trivial, &ga).unwrap(), 2).unwrap();
    assert_eq!(sp.dim(), 10);
}

#[test]
fn g2_p_action_lowers_weight() {
    let ga = Arc::new(g2().unwrap());
    let cx = complex(&ga, "trivial");
    let xi = ga.grading.negative_basis()[0];
    assert_eq!(*ga.grading.weight(xi), Rational::from_int(-1));
    let m = cx.p_action_matrix(&SparseVec::unit(ga.algebra.dim(), xi), 1).unwrap();
    assert!(!m.is_zero());
    let sp = cx.space(1);
    for (i, j, _) in m.triplets() {
        assert!(sp.weight(i) < sp.weight(j));
    }
    assert!(!cx.d(1).unwrap().is_zero());
}

#[test]
fn abelian_p_action_on_forms_is_trivial() {
    let ga = Arc::new(conformal(3, 0).unwrap());
    let cx = complex(&ga, "trivial");
    for &b in ga.grading.negative_basis() {
        for k in 0..=3 {
            assert!(cx.p_action_matrix(&SparseVec::unit(ga.algebra.dim(), b), k).unwrap().is_zero());
        }
    }
    let e = ga.grading.grading_element().clone();
    let m = cx.p_action_matrix(&e, 2).unwrap();
    assert!(m.is_diagonal());
    for i in 0..cx.dim(2) {
        assert_eq!(m.get(i, i), *cx.space(2).weight(i));
    }
    let p = SparseVec::unit(ga.algebra.dim(), ga.grading.m_basis()[0]);
    assert!(cx.p_action_matrix(&p, 1).is_err());
}

#[test]
fn homology_module_weights_and_projection() {
    let ga = Arc::new(conformal(3, 0).unwrap());
    let cx = complex(&ga, "standard");
    let h0 = homology_module(&cx, 0).unwrap();
    assert_eq!(h0.weights, vec![Rational::from_int(1)]);
    let h3 = homology_module(&cx, 3).unwrap();
    assert_eq!(h3.weights, vec![Rational::from_int(-4)]);
    let h1 = homology_module(&cx, 1).unwrap();
    for v in &h1.hodge.im_a {
        assert!(h1.project_matrix.apply(v).is_zero());
    }
}

#[test]
fn low_degree_delta_formulas() {
    let ga = Arc::new(conformal(3, 0).unwrap());
    let cx = complex(&ga, "standard");
    assert_eq!(cx.delta(0).nrows(), 0);
    // δ(ε^i ⊗ w) = ε^i · w
    let w = cx.w_dim();
    for i in 0..3 {
        for c in 0..w {
            let col = cx.delta(1).column_vec(i * w + c);
            let want = cx.rho_eps(i).column_vec(c);
            assert_eq!(col, want);
        }
    }
}
