#![allow(dead_code)]

use nilrep_core::lie::LieBasisElement::{self, E, H};
use nilrep_core::poly::{int, rat, DegreeMode, Monomial, Polynomial, Rational};
use nilrep_core::rep::Representation;
use nilrep_core::weyl::WeylElement;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num = rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(num, rng.gen_range(1..=5))
}

/// Up to `terms` random monomials of degree `<= max_degree`, random
/// rational coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, max_degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let deg = rng.gen_range(0..=max_degree);
        let monos = Monomial::all_of_degree(n, deg);
        let m = monos[rng.gen_range(0..monos.len())].clone();
        p.add_term(m, random_rational(rng));
    }
    p
}

pub fn monomials_up_to(n: usize, degree: u32) -> Vec<Polynomial> {
    (0..=degree)
        .flat_map(|d| Monomial::all_of_degree(n, d))
        .map(|m| Polynomial::from_monomial(m, int(1)))
        .collect()
}

pub fn poly(s: &str, n: usize) -> Polynomial {
    Polynomial::parse(s, n).unwrap()
}

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| rat(a, b))
}

pub fn poly_strategy(n: usize, max_degree: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_degree, n), rational_strategy()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = Polynomial::zero(n);
        for (mut exps, c) in terms {
            // keep total degree within the bound
            while exps.iter().sum::<u32>() > max_degree {
                let i = exps.iter().position(|&e| e > 0).unwrap();
                exps[i] -= 1;
            }
            p.add_term(Monomial::from_exponents(exps), c);
        }
        p
    })
}

pub fn mult(f: &Polynomial) -> WeylElement {
    WeylElement::from_polynomial(f)
}

/// Commuting a polynomial `f` of the nilradical past each basis element.
pub fn commutation_residuals(rep: &Representation, f: &Polynomial) -> Vec<(LieBasisElement, WeylElement)> {
    let n = rep.rank();
    let fm = mult(f);
    let df = |i: usize| f.differentiate(i).unwrap();
    let x = |i: usize| Polynomial::var(n, i).unwrap();
    let h_bar = (1..=n).fold(WeylElement::zero(n), |acc, j| &acc + rep.rho(H(j)));
    let mut out = Vec::new();
    for i in 1..=n {
        let lhs = rep.rho(E(i, n + 1)) * &fm;
        out.push((E(i, n + 1), &lhs - &(&fm * rep.rho(E(i, n + 1)))));

        let lhs = rep.rho(H(i)) * &fm;
        let rhs = &(&fm * rep.rho(H(i))) + &mult(&(&x(i) * &df(i)));
        out.push((H(i), &lhs - &rhs));

        for j in (1..=n).filter(|&j| j != i) {
            let lhs = rep.rho(E(i, j)) * &fm;
            let rhs = &(&fm * rep.rho(E(i, j))) + &mult(&(&x(i) * &df(j)));
            out.push((E(i, j), &lhs - &rhs));
        }

        let lhs = rep.rho(E(n + 1, i)) * &fm;
        let mut rhs = &fm * rep.rho(E(n + 1, i));
        for k in (1..=n).filter(|&k| k != i) {
            rhs -= &(&mult(&df(k)) * rep.rho(E(k, i)));
        }
        rhs -= &(&mult(&df(i)) * &(&h_bar + rep.rho(H(i))));
        rhs -= &mult(&df(i).degree_operator(DegreeMode::Full).unwrap());
        out.push((E(n + 1, i), &lhs - &rhs));
    }
    out
}

