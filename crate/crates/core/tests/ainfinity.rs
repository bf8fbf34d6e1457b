use std::sync::Arc;

use bgg_core::bgg::{lambda_expansion, AInfinity, BggContext, PairingData, Product, SectionSampler, Triple};
use bgg_core::lie::projective;

fn end_context(d: usize) -> (BggContext, PairingData) {
    let ga = Arc::new(projective(2).unwrap());
    let c = BggContext::from_expr(ga.clone(), "tensor(standard,dual(standard))", d).unwrap();
    let p = PairingData::composition(c.rep().clone(), 3, &ga).unwrap();
    (c, p)
}

#[test]
fn lambda_term_counts() {
    let counts: Vec<usize> = (2..=5).map(|m| lambda_expansion(m).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 14]);
    assert_eq!(lambda_expansion(3), vec!["a1∧Q(a2∧a3)", "Q(a1∧a2)∧a3"]);
}

#[test]
fn low_maps_match_bgg_cup_and_triple() {
    let (c, p) = end_context(3);
    let ai = AInfinity::new(&c, &p, 0).unwrap();
    let prod = Product::new(&p, &c, &c, &c).unwrap();
    let triple = Triple::new(prod, prod, prod, prod).unwrap();
    let mut s = SectionSampler::new(21);
    for (k, l, m) in [(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 0)] {
        let a = s.section(c.homology_sections(k), 1);
        let b = s.section(c.homology_sections(l), 1);
        let g = s.section(c.homology_sections(m), 1);
        let mu1 = ai.mu(&[(k, a.clone())]).unwrap().map(|x| x.1);
        assert_eq!(mu1, c.primal().apply_bgg(k, &a).unwrap());
        let mu2 = ai.mu(&[(k, a.clone()), (l, b.clone())]).unwrap().unwrap();
        assert_eq!(mu2, (k + l, prod.cup(k, &a, l, &b).unwrap()));
        let mu3 = ai.mu(&[(k, a.clone()), (l, b.clone()), (m, g.clone())]).unwrap().map(|x| x.1);
        assert_eq!(mu3, triple.triple(k, &a, l, &b, m, &g).unwrap());
    }
}

#[test]
fn relations_up_to_three() {
    let (c, p) = end_context(3);
    let ai = AInfinity::new(&c, &p, 0).unwrap();
    let mut s = SectionSampler::new(4);
    let degs: [&[usize]; 9] = [&[0], &[1], &[0, 0], &[0, 1], &[1, 1], &[0, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 0, 1]];
    for ds in degs {
        let args: Vec<_> = ds.iter().map(|&k| (k, s.section(c.homology_sections(k), 1))).collect();
        let target = ds.iter().sum::<usize>() + 3 - ds.len();
        match ai.relation_residual(&args).unwrap() {
            Some(r) => assert!(r.is_zero(), "relation fails for degrees {ds:?}"),
            None => assert!(target > c.n()),
        }
    }
}
