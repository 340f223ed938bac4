mod common;

use common::poly_strategy;
use nilrep_core::poly::{Monomial, Polynomial};
use nilrep_core::weyl::WeylElement;
use proptest::prelude::*;

const N: usize = 2;

fn weyl_strategy() -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((poly_strategy(N, 2, 3), prop::collection::vec(0u32..=2, N)), 0..=3).prop_map(|parts| {
        let mut out = WeylElement::zero(N);
        for (f, b) in parts {
            out += &WeylElement::poly_times_derivative(&f, &Monomial::from_exponents(b));
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative(a in weyl_strategy(), b in weyl_strategy(), c in weyl_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_distributes(a in weyl_strategy(), b in weyl_strategy(), c in weyl_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn commutator_satisfies_jacobi(a in weyl_strategy(), b in weyl_strategy(), c in weyl_strategy()) {
        let br = |u: &WeylElement, v: &WeylElement| u.commutator(v).unwrap();
        let total = &(&br(&a, &br(&b, &c)) + &br(&b, &br(&c, &a))) + &br(&c, &br(&a, &b));
        prop_assert!(total.is_zero());
        prop_assert_eq!(br(&a, &b), -br(&b, &a));
    }

    #[test]
    fn apply_is_a_homomorphism(a in weyl_strategy(), b in weyl_strategy(), f in poly_strategy(N, 4, 5)) {
        let ab = &a * &b;
        prop_assert_eq!(ab.apply(&f).unwrap(), a.apply(&b.apply(&f).unwrap()).unwrap());
    }

    #[test]
    fn polynomials_embed_as_a_subring(f in poly_strategy(N, 3, 4), g in poly_strategy(N, 3, 4)) {
        let lhs = &WeylElement::from_polynomial(&f) * &WeylElement::from_polynomial(&g);
        prop_assert_eq!(lhs, WeylElement::from_polynomial(&(&f * &g)));
    }
}

#[test]
fn canonical_commutation() {
    for i in 1..=3 {
        for j in 1..=3 {
            let x = WeylElement::x(3, j).unwrap();
            let d = WeylElement::d(3, i).unwrap();
            let want = if i == j { WeylElement::one(3) } else { WeylElement::zero(3) };
            assert_eq!(d.commutator(&x).unwrap(), want);
        }
    }
    assert!(WeylElement::x(2, 3).is_err());
    assert!(WeylElement::x(2, 1).unwrap().multiply(&WeylElement::x(3, 1).unwrap()).is_err());
    let f = Polynomial::parse("x1^3*x2", 2).unwrap();
    assert_eq!(WeylElement::euler(2).apply(&f).unwrap(), f.scale(&nilrep_core::poly::int(4)));
}
