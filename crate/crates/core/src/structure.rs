//! Submodules of `M(p)` and of the sl(2) modules `V(p)`.
//!
//! Every submodule of `M(p)` is one of the ideals
//! `W_m = span{ x^a : |a| >= m }`. Whether `W_m` is invariant is decided here
//! by a finite exact computation: apply every basis operator to every
//! monomial of degree `m` and check that nothing of degree `< m` comes out.
//! That suffices because each operator other than `e(n+1,i)` preserves or
//! raises degree and `W_m` is generated as an ideal by its degree-`m` part.
//!
//! Reports carry both the closed-form simplicity criterion and the result of
//! this search. They disagree at the boundary: the search finds the submodule
//! `W_{k+1}` where the closed form names `W_k`, and it finds a submodule when
//! `p(0) = 0`, which the closed form calls simple. Both are reported, the
//! search is authoritative.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::{int, Monomial, PolyError, Polynomial, Rational};
use crate::rep::{build_rep_sl2, Representation, Sl2Element, Sl2Rep};
use crate::weyl::WeylElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("search bound must be at least 1")]
    BadBound,
    #[error("W_{0} is not invariant")]
    NotInvariant(u32),
}

fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn serialize_rationals<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(|r| r.to_string()))
}

/// The closed-form criterion: `M(p)` is simple unless
/// `k = -((n+1)/n) p(0)` is a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Prediction {
    Simple {
        #[serde(serialize_with = "serialize_rational")]
        k: Rational,
    },
    ReducibleAt {
        k: u64,
    },
}

impl Prediction {
    pub fn is_reducible(&self) -> bool {
        matches!(self, Prediction::ReducibleAt { .. })
    }
}

/// The sl(2) criterion applied to `V(P)` with `P(0) = 2 p(0)`: reducible iff
/// `P(0)` is a nonpositive integer, with submodule `x^(1 - P(0)) Q[x]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Prediction {
    #[serde(serialize_with = "serialize_rational")]
    pub parameter_at_zero: Rational,
    pub submodule_degree: Option<u64>,
}

/// `-((n+1)/n) p(0)`.
pub fn closed_form_k(n: usize, p: &Polynomial) -> Rational {
    -(p.constant_term() * int(n as i64 + 1) / int(n as i64))
}

fn positive_integer(r: &Rational) -> Option<u64> {
    (r.is_integer() && r.is_positive()).then(|| r.to_integer().to_u64()).flatten()
}

fn nonpositive_integer(r: &Rational) -> Option<u64> {
    (r.is_integer() && !r.is_positive()).then(|| (-r.to_integer()).to_u64()).flatten()
}

pub fn predicted_reducibility(n: usize, p: &Polynomial) -> Prediction {
    let k = closed_form_k(n, p);
    match positive_integer(&k) {
        Some(k) => Prediction::ReducibleAt { k },
        None => Prediction::Simple { k },
    }
}

/// The sl(2) form of the criterion for `n = 1`; `None` otherwise.
pub fn predicted_reducibility_sl2(n: usize, p: &Polynomial) -> Option<Sl2Prediction> {
    (n == 1).then(|| sl2_prediction(&(p.constant_term() * int(2))))
}

fn sl2_prediction(parameter_at_zero: &Rational) -> Sl2Prediction {
    Sl2Prediction {
        parameter_at_zero: parameter_at_zero.clone(),
        submodule_degree: nonpositive_integer(parameter_at_zero).map(|m| m + 1),
    }
}

fn lowers_below(op: &WeylElement, f: &Polynomial, m: u32) -> bool {
    let image = op.apply(f).expect("same variable count");
    !image.truncate_below(m).is_zero()
}

/// Exact check that `W_m` is stable under every operator of `rep`.
pub fn is_invariant(rep: &Representation, m: u32) -> bool {
    if m == 0 {
        return true;
    }
    let n = rep.rank();
    let monomials = Monomial::all_of_degree(n, m);
    rep.basis().par_iter().all(|&b| {
        let op = rep.rho(b);
        monomials
            .iter()
            .all(|mono| !lowers_below(op, &Polynomial::from_monomial(mono.clone(), Rational::one()), m))
    })
}

/// `max(8, ceil(1 - (n+1) p(0) / n) + 2)`.
pub fn default_bound(n: usize, p: &Polynomial) -> u32 {
    let v = Rational::one() + closed_form_k(n, p);
    let c = v.ceil().to_integer() + BigInt::from(2);
    c.to_u32().unwrap_or(0).max(8)
}

/// Smallest `m` in `1..=bound` with `W_m` invariant.
pub fn minimal_invariant_degree(rep: &Representation, bound: u32) -> Result<Option<u32>, StructureError> {
    if bound < 1 {
        return Err(StructureError::BadBound);
    }
    Ok((1..=bound).find(|&m| is_invariant(rep, m)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientData {
    pub dim: u64,
    /// Values of `h(1), ..., h(n)` on the image of `x1^(m-1)`.
    #[serde(serialize_with = "serialize_rationals")]
    pub weight: Vec<Rational>,
}

/// Number of monomials in `n` variables of total degree `< m`.
pub fn count_monomials_below(n: usize, m: u32) -> u64 {
    (0..m).map(|d| Monomial::all_of_degree(n, d).len() as u64).sum()
}

/// Dimension and highest weight of `M(p) / W_m`.
pub fn quotient_data(rep: &Representation, m: u32) -> Result<QuotientData, StructureError> {
    if m == 0 || !is_invariant(rep, m) {
        return Err(StructureError::NotInvariant(m));
    }
    let n = rep.rank();
    let mut exps = vec![0; n];
    exps[0] = m - 1;
    let top = Monomial::from_exponents(exps);
    let f = Polynomial::from_monomial(top.clone(), Rational::one());
    let weight = (1..=n)
        .map(|i| {
            let image = rep.rho(crate::lie::LieBasisElement::H(i)).apply(&f).expect("same rank");
            // modulo W_m, and h(i) never lowers degree
            let low = image.truncate_below(m);
            debug_assert!(low.terms().all(|(mono, _)| mono == &top));
            low.coeff(&top)
        })
        .collect();
    Ok(QuotientData {
        dim: count_monomials_below(n, m),
        weight,
    })
}

fn binomial(n: i64, k: i64) -> Option<u64> {
    if n < 0 || k < 0 || k > n {
        return Some(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc.to_u64()
}

/// A disagreement between the closed-form statements and the search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Discrepancy {
    /// The closed form names `W_k` (or no submodule, `closed_form_k = None`)
    /// where the search found `W_m`.
    SubmoduleIndex {
        closed_form_k: Option<u64>,
        oracle_m: Option<u32>,
    },
    /// `C(m+n-2, m-1)` against the direct monomial count of `M(p)/W_m`.
    QuotientDimension { degree: u32, closed_form: u64, direct: u64 },
    /// `δ_i1 (n+2)/n p(0)` against the computed weight.
    HighestWeight {
        #[serde(serialize_with = "serialize_rationals")]
        closed_form: Vec<Rational>,
        #[serde(serialize_with = "serialize_rationals")]
        direct: Vec<Rational>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubmoduleReport {
    pub n: usize,
    pub p: Polynomial,
    pub predicted: Prediction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_sl2: Option<Sl2Prediction>,
    pub search_bound: u32,
    pub oracle_min_degree: Option<u32>,
    /// Whether the closed form and the search agree on reducibility.
    pub agreement: bool,
    pub quotient: Option<QuotientData>,
    pub notes: Vec<Discrepancy>,
}

pub fn submodule_report(
    rep: &Representation,
    bound: Option<u32>,
) -> Result<SubmoduleReport, StructureError> {
    let n = rep.rank();
    let p = rep.p();
    let search_bound = bound.unwrap_or_else(|| default_bound(n, p));
    let predicted = predicted_reducibility(n, p);
    let oracle = minimal_invariant_degree(rep, search_bound)?;
    let quotient = oracle.map(|m| quotient_data(rep, m)).transpose()?;

    let closed_k = match predicted {
        Prediction::ReducibleAt { k } => Some(k),
        Prediction::Simple { .. } => None,
    };
    let mut notes = Vec::new();
    if closed_k.map(|k| k as u32) != oracle {
        notes.push(Discrepancy::SubmoduleIndex {
            closed_form_k: closed_k,
            oracle_m: oracle,
        });
    }
    if let (Some(m), Some(q)) = (oracle, &quotient) {
        let closed_form = binomial(m as i64 + n as i64 - 2, m as i64 - 1).unwrap_or(u64::MAX);
        if closed_form != q.dim {
            notes.push(Discrepancy::QuotientDimension {
                degree: m,
                closed_form,
                direct: q.dim,
            });
        }
        let scale = p.constant_term() * int(n as i64 + 2) / int(n as i64);
        let closed_weight: Vec<Rational> = (1..=n)
            .map(|i| if i == 1 { scale.clone() } else { Rational::zero() })
            .collect();
        if closed_weight != q.weight {
            notes.push(Discrepancy::HighestWeight {
                closed_form: closed_weight,
                direct: q.weight.clone(),
            });
        }
    }

    Ok(SubmoduleReport {
        n,
        p: p.clone(),
        agreement: predicted.is_reducible() == oracle.is_some(),
        predicted,
        predicted_sl2: predicted_reducibility_sl2(n, p),
        search_bound,
        oracle_min_degree: oracle,
        quotient,
        notes,
    })
}

/// Data of `0 -> V(p - 2p(0) + 2) -> V(p) -> L(-p(0)) -> 0`, with the
/// intertwiner `f ↦ x^k f` checked as an operator identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceWitness {
    /// `1 - p(0)`: the submodule is `x^k Q[x]`.
    pub k: u64,
    pub sub_parameter: Polynomial,
    pub quotient_hw: u64,
    /// `rho_p(a) x^k = x^k rho_sub(a)` for `a = x, h, y`.
    pub intertwiner_ok: bool,
    /// `x^k Q[x]` is stable and `x^j Q[x]` is not for `1 <= j < k`.
    pub submodule_ok: bool,
    pub quotient_dim: u64,
    /// `h` acts on the image of `x^(k-1)` by this value.
    pub quotient_top_weight: i64,
}

fn sl2_invariant(rep: &Sl2Rep, m: u32) -> bool {
    let f = Polynomial::from_terms(1, [(vec![m], Rational::one())]);
    Sl2Element::ALL
        .iter()
        .all(|&a| !lowers_below(rep.rho(a), &f, m))
}

/// `None` when `p(0)` is not a nonpositive integer.
pub fn sl2_exact_sequence_witness(p: &Polynomial) -> Option<ExactSequenceWitness> {
    assert_eq!(p.nvars(), 1, "sl(2) parameters are one-variable polynomials");
    let depth = nonpositive_integer(&p.constant_term())?;
    let k = depth + 1;
    let k32 = u32::try_from(k).ok()?;
    let shift = int(2 * k as i64);
    let sub_parameter = p + &Polynomial::constant(1, shift);
    let full = build_rep_sl2(p);
    let sub = build_rep_sl2(&sub_parameter);
    let xk = WeylElement::from_polynomial(&Polynomial::from_terms(1, [(vec![k32], Rational::one())]));
    let intertwiner_ok = Sl2Element::ALL
        .iter()
        .all(|&a| full.rho(a) * &xk == &xk * sub.rho(a));
    let submodule_ok = sl2_invariant(&full, k32) && (1..k32).all(|j| !sl2_invariant(&full, j));
    let top = Polynomial::from_terms(1, [(vec![k32 - 1], Rational::one())]);
    let h_top = full.act(Sl2Element::H, &top).truncate_below(k32);
    let top_weight = h_top.coeff(&Monomial::from_exponents(vec![k32 - 1]));
    let quotient_top_weight = if top_weight.is_integer() {
        top_weight.to_integer().to_i64().unwrap_or(i64::MIN)
    } else {
        i64::MIN
    };
    Some(ExactSequenceWitness {
        k,
        sub_parameter,
        quotient_hw: depth,
        intertwiner_ok,
        submodule_ok,
        quotient_dim: k,
        quotient_top_weight,
    })
}

/// `M(p) ≅ M(p̃)` exactly when the parameters coincide.
pub fn isomorphism_test(p: &Polynomial, other: &Polynomial) -> Result<bool, PolyError> {
    p.same_space(other)?;
    Ok(p == other)
}

/// The fraction `((n+1)/n) p(0) + m - 1` multiplying `f^i` in the
/// degree-lowering part of `e(n+1,i)` on a degree-`m` monomial `f`.
pub fn lowering_coefficient(n: usize, p: &Polynomial, m: u32) -> Rational {
    p.constant_term() * int(n as i64 + 1) / int(n as i64) + int(m as i64 - 1)
}
