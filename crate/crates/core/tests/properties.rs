use std::sync::Arc;

use bgg_core::exact::{elim, invert_on_subspace, BasedSpace, OperatorMatrix, Rational, SparseMatrix, SubspaceBasis};
use bgg_core::io::{read_matrix, write_matrix};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn big_rational() -> impl Strategy<Value = Rational> {
    (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d))
}

fn matrix(max: usize) -> impl Strategy<Value = SparseMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::option::weighted(0.4, -3i64..=3), r * c).prop_map(move |vals| {
            let trips = vals
                .into_iter()
                .enumerate()
                .filter_map(|(idx, v)| v.map(|v| (idx / c, idx % c, Rational::from_int(v))))
                .collect();
            SparseMatrix::from_triplets(r, c, trips)
        })
    })
}

proptest! {
    #[test]
    fn field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.recip(), Rational::one());
        }
    }

    #[test]
    fn overflow_promotes_exactly(a in big_rational(), b in big_rational()) {
        let s = &a + &b;
        prop_assert_eq!(&s - &b, a.clone());
        let p = &a * &b;
        if !b.is_zero() {
            prop_assert_eq!(&p / &b, a);
        }
    }

    #[test]
    fn display_parse_roundtrip(a in big_rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in matrix(7)) {
        let k = elim::kernel(&m);
        prop_assert_eq!(k.len() + elim::rank(&m), m.ncols());
        for v in &k {
            prop_assert!(m.apply(v).is_zero());
        }
        prop_assert_eq!(elim::rank(&m), elim::rank(&m.transpose()));
    }

    #[test]
    fn solve_reproduces_rhs(m in matrix(6), x in prop::collection::vec(-3i64..=3, 6)) {
        let xs = bgg_core::exact::SparseVec::from_pairs(m.ncols(), x.iter().take(m.ncols()).enumerate().map(|(i, &v)| (i, Rational::from_int(v))).collect());
        let b = m.apply(&xs);
        let sol = elim::solve(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.apply(&sol), b);
    }

    #[test]
    fn subspace_inverse(m in matrix(6)) {
        // (m mᵀ + 1) restricted to the image of m is invertible; span(image) is invariant.
        let n = m.nrows();
        let a = m.mul(&m.transpose()).add(&SparseMatrix::identity(n));
        let space = Arc::new(BasedSpace::numbered("e", n));
        let s = SubspaceBasis::new(space.clone(), elim::image(&m)).unwrap();
        let op = OperatorMatrix::new(space.clone(), space, a.clone()).unwrap();
        let inv = invert_on_subspace(&op, &s).unwrap();
        for (j, v) in s.vectors().iter().enumerate() {
            let coords = s.coords(&a.apply(v)).unwrap();
            prop_assert_eq!(inv.apply(&coords), bgg_core::exact::SparseVec::unit(s.dim(), j));
        }
    }

    #[test]
    fn matrix_export_roundtrip(m in matrix(6), w in rational()) {
        let dom = BasedSpace::new((0..m.ncols()).map(|i| format!("ε({i})⊗(v{i},x)")).collect(), vec![w.clone(); m.ncols()]).unwrap();
        let cod = BasedSpace::numbered("h", m.nrows());
        let op = OperatorMatrix::new(Arc::new(dom), Arc::new(cod), m.scale(&w)).unwrap();
        let text = write_matrix(&op);
        let back = read_matrix(&text).unwrap();
        prop_assert_eq!(&back, &op);
        prop_assert_eq!(write_matrix(&back), text);
    }
}
