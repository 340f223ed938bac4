//! Exact certification of the bracket relations.
//!
//! For every unordered pair of basis elements `(a, b)` the commutator of the
//! two operators is compared against the operator of `[a, b]`. Pairs are
//! independent and are checked on the rayon pool; the report lists them in
//! basis order regardless of scheduling.

use rayon::prelude::*;
use serde::Serialize;

use super::sl2::{Sl2Element, Sl2Rep};
use super::Representation;
use crate::lie::{bracket, LieBasisElement};
use crate::poly::{int, Polynomial};
use crate::weyl::WeylElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub a: String,
    pub b: String,
    /// `[rho(a), rho(b)] - rho([a, b])`.
    pub residual: WeylElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub p: Polynomial,
    pub pairs_checked: usize,
    pub failures: Vec<PairFailure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn unordered_pairs<T: Copy>(items: &[T]) -> Vec<(T, T)> {
    let mut out = Vec::with_capacity(items.len() * items.len().saturating_sub(1) / 2);
    for (idx, &a) in items.iter().enumerate() {
        for &b in &items[idx + 1..] {
            out.push((a, b));
        }
    }
    out
}

pub fn verify_representation(rep: &Representation) -> VerificationReport {
    let n = rep.rank();
    let pairs: Vec<(LieBasisElement, LieBasisElement)> = unordered_pairs(&rep.basis());
    let failures: Vec<PairFailure> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let lhs = rep.rho(a).commutator(rep.rho(b)).expect("same rank");
            let rhs = rep.rho_combination(&bracket(a, b, n).expect("basis elements are valid"));
            let residual = lhs - rhs;
            (!residual.is_zero()).then(|| PairFailure {
                a: a.to_string(),
                b: b.to_string(),
                residual,
            })
        })
        .collect();
    VerificationReport {
        n,
        p: rep.p().clone(),
        pairs_checked: pairs.len(),
        failures,
    }
}

pub fn verify_sl2(rep: &Sl2Rep) -> VerificationReport {
    let pairs = unordered_pairs(&Sl2Element::ALL);
    let failures = pairs
        .iter()
        .filter_map(|&(a, b)| {
            let lhs = rep.rho(a).commutator(rep.rho(b)).expect("one variable");
            let mut rhs = WeylElement::zero(1);
            for (c, e) in a.bracket(b).into_iter().zip(Sl2Element::ALL) {
                if c != 0 {
                    rhs += &rep.rho(e).scale(&int(c));
                }
            }
            let residual = lhs - rhs;
            (!residual.is_zero()).then(|| PairFailure {
                a: a.to_string(),
                b: b.to_string(),
                residual,
            })
        })
        .collect();
    VerificationReport {
        n: 1,
        p: rep.p().clone(),
        pairs_checked: pairs.len(),
        failures,
    }
}
