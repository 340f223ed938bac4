mod common;

use common::poly_strategy;
use nilrep_core::poly::{DegreeMode, Polynomial};
use proptest::prelude::*;

fn var(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i).unwrap()
}

proptest! {
    #[test]
    fn ring_axioms(a in poly_strategy(3, 3, 4), b in poly_strategy(3, 3, 4), c in poly_strategy(3, 2, 3)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(3), a.clone());
    }

    #[test]
    fn derivative_is_a_derivation(a in poly_strategy(2, 4, 4), b in poly_strategy(2, 4, 4), i in 1usize..=2) {
        let lhs = (&a * &b).differentiate(i).unwrap();
        let rhs = &(&a.differentiate(i).unwrap() * &b) + &(&a * &b.differentiate(i).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_round_trips(a in poly_strategy(4, 4, 6)) {
        prop_assert_eq!(Polynomial::parse(&a.to_string(), 4).unwrap(), a);
    }

    #[test]
    fn degree_operator_inverts_on_positive_degree(a in poly_strategy(4, 4, 6)) {
        let c = Polynomial::constant(4, a.constant_term());
        let d = a.degree_operator(DegreeMode::Full).unwrap();
        prop_assert_eq!(d.degree_section(DegreeMode::Full).unwrap(), &a - &c);
        let ds = a.degree_section(DegreeMode::Full).unwrap();
        prop_assert_eq!(ds.degree_operator(DegreeMode::Full).unwrap(), &a - &c);
    }

    #[test]
    fn single_variable_degree_operator(a in poly_strategy(3, 4, 6), i in 1usize..=3) {
        let rest = a.set_var_zero(i).unwrap();
        let mode = DegreeMode::Single(i);
        prop_assert_eq!(a.degree_operator(mode).unwrap().degree_section(mode).unwrap(), &a - &rest);
        prop_assert_eq!(a.degree_section(mode).unwrap().degree_operator(mode).unwrap(), &a - &rest);
    }

    #[test]
    fn degree_commutes_with_shift(a in poly_strategy(3, 4, 6), i in 1usize..=3, j in 1usize..=3) {
        let shift = |f: &Polynomial| &var(3, i) * &f.differentiate(j).unwrap();
        let d = |f: &Polynomial| f.degree_operator(DegreeMode::Full).unwrap();
        prop_assert_eq!(d(&shift(&a)), shift(&d(&a)));
    }

    #[test]
    fn derivative_against_degree(a in poly_strategy(3, 4, 6), i in 1usize..=3) {
        let d = |f: &Polynomial| f.degree_operator(DegreeMode::Full).unwrap();
        let di = |f: &Polynomial| f.differentiate(i).unwrap();
        prop_assert_eq!(&di(&d(&a)) - &d(&di(&a)), di(&a));
    }

    #[test]
    fn integration_inverts_differentiation(a in poly_strategy(2, 4, 5), i in 1usize..=2) {
        let back = a.integrate_from_zero(i).unwrap().differentiate(i).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn errors_on_bad_indices() {
    let a = Polynomial::parse("x1*x2", 2).unwrap();
    assert!(a.differentiate(3).is_err());
    assert!(a.differentiate(0).is_err());
    assert!(a.degree_operator(DegreeMode::Single(3)).is_err());
    assert!(Polynomial::parse("x3", 2).is_err());
    assert!(Polynomial::parse("x1 +", 2).is_err());
}
