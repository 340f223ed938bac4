//! Recovering the parameter `p` from generator-on-one data.
//!
//! The tables must satisfy a fixed list of polynomial identities, checked in
//! this order:
//!
//! * `pii`:  `x_i p_jj^i = x_j p_ii^j`
//! * `pij3`: `x_i p_kl^j - x_k p_ij^l = δ_kj p_il - δ_il p_kj` for all `i,j,k,l`
//! * `pij`:  `x_k p_ij^k - x_i p_kk^j = (δ_ki - δ_kj) p_ij`
//! * `pij2`: `x_i p_ji^j - x_j p_ij^i = p_ii - p_jj`
//! * `q`:    `q_i` equals the integral formula built from the `p_ij`
//!
//! When all hold, `p = d'(p̄)` and the tables of `M(p)` are rebuilt and
//! compared against the input as a final certificate.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{build_tables, q_from_table, GeneratorTables};
use crate::poly::{DegreeMode, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Pii,
    Pij3,
    Pij,
    Pij2,
    Q,
    Reconstruction,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Pii => "pii",
            Relation::Pij3 => "pij3",
            Relation::Pij => "pij",
            Relation::Pij2 => "pij2",
            Relation::Q => "q",
            Relation::Reconstruction => "reconstruction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("tables violate relation {relation} at indices {indices:?}")]
pub struct Inconsistency {
    pub relation: Relation,
    /// 1-based indices of the first violated instance.
    pub indices: Vec<usize>,
    /// Left side minus right side of the violated instance.
    pub residual: Polynomial,
}

fn delta(a: usize, b: usize) -> bool {
    a == b
}

pub fn classify_from_action(tables: &GeneratorTables) -> Result<Polynomial, Inconsistency> {
    let n = tables.rank();
    let x = |i: usize| Polynomial::var(n, i).expect("index in range");
    let p = |i: usize, j: usize| tables.p(i, j);
    let fail = |relation, indices: Vec<usize>, residual: Polynomial| Inconsistency {
        relation,
        indices,
        residual,
    };
    let when = |cond: bool, f: &Polynomial| if cond { f.clone() } else { Polynomial::zero(n) };

    for i in 1..=n {
        for j in 1..=n {
            let r = &x(i) * &p(j, j).diff(i) - &x(j) * &p(i, i).diff(j);
            if !r.is_zero() {
                return Err(fail(Relation::Pii, vec![i, j], r));
            }
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let lhs = &x(i) * &p(k, l).diff(j) - &x(k) * &p(i, j).diff(l);
                    let rhs = when(delta(k, j), p(i, l)) - when(delta(i, l), p(k, j));
                    let r = lhs - rhs;
                    if !r.is_zero() {
                        return Err(fail(Relation::Pij3, vec![i, j, k, l], r));
                    }
                }
            }
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                let lhs = &x(k) * &p(i, j).diff(k) - &x(i) * &p(k, k).diff(j);
                let rhs = when(delta(k, i), p(i, j)) - when(delta(k, j), p(i, j));
                let r = lhs - rhs;
                if !r.is_zero() {
                    return Err(fail(Relation::Pij, vec![i, j, k], r));
                }
            }
        }
    }

    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let lhs = &x(i) * &p(j, i).diff(j) - &x(j) * &p(i, j).diff(i);
            let r = lhs - (p(i, i) - p(j, j));
            if !r.is_zero() {
                return Err(fail(Relation::Pij2, vec![i, j], r));
            }
        }
    }

    for i in 1..=n {
        let q = q_from_table(|a, b| p(a, b).clone(), i, n)
            .expect("an antiderivative from zero is divisible by its variable");
        let r = tables.q(i) - &q;
        if !r.is_zero() {
            return Err(fail(Relation::Q, vec![i], r));
        }
    }

    let param = tables
        .p_bar()
        .degree_section(DegreeMode::Full)
        .expect("full mode never fails");
    let rebuilt = build_tables(n, &param).expect("rank and shape already valid");
    if &rebuilt != tables {
        let (indices, residual) = first_difference(&rebuilt, tables);
        return Err(fail(Relation::Reconstruction, indices, residual));
    }
    Ok(param)
}

fn first_difference(a: &GeneratorTables, b: &GeneratorTables) -> (Vec<usize>, Polynomial) {
    let n = a.rank();
    for i in 1..=n {
        for j in 1..=n {
            if a.p(i, j) != b.p(i, j) {
                return (vec![i, j], b.p(i, j) - a.p(i, j));
            }
        }
    }
    for i in 1..=n {
        if a.q(i) != b.q(i) {
            return (vec![i], b.q(i) - a.q(i));
        }
    }
    (Vec::new(), Polynomial::zero(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::rep::build_rep;

    fn poly(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn round_trip() {
        for (n, s) in [(1, "x1^3 - 2"), (2, "x1^2*x2 + 1/5"), (3, "x1*x3 - x2^2 + 3")] {
            let p = poly(s, n);
            let rep = build_rep(n, &p).unwrap();
            assert_eq!(classify_from_action(rep.tables()).unwrap(), p);
        }
    }

    #[test]
    fn constant_tables() {
        let n = 3;
        let c = rat(3, 7);
        let pij = (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|j| {
                        if i == j {
                            Polynomial::constant(n, &c / rat(n as i64, 1))
                        } else {
                            Polynomial::zero(n)
                        }
                    })
                    .collect()
            })
            .collect();
        let tables = GeneratorTables::new(n, pij, vec![Polynomial::zero(n); n]).unwrap();
        assert_eq!(classify_from_action(&tables).unwrap(), Polynomial::constant(n, c));
    }

    #[test]
    fn perturbed_off_diagonal_entry() {
        let rep = build_rep(2, &poly("x1^2 - x2", 2)).unwrap();
        let mut tables = rep.tables().clone();
        *tables.p_mut(1, 2) += &poly("x2", 2);
        let err = classify_from_action(&tables).unwrap_err();
        assert_eq!(err.relation, Relation::Pij3);
    }

    #[test]
    fn perturbed_q_entry() {
        let rep = build_rep(2, &poly("x1*x2", 2)).unwrap();
        let mut tables = rep.tables().clone();
        *tables.q_mut(2) += &poly("x1", 2);
        let err = classify_from_action(&tables).unwrap_err();
        assert_eq!(err.relation, Relation::Q);
        assert_eq!(err.indices, vec![2]);
        assert_eq!(err.residual, poly("x1", 2));
    }

    #[test]
    fn perturbed_cartan_entry() {
        let rep = build_rep(2, &poly("x1^2", 2)).unwrap();
        let mut tables = rep.tables().clone();
        *tables.p_mut(2, 2) += &poly("x1", 2);
        assert_eq!(classify_from_action(&tables).unwrap_err().relation, Relation::Pii);
    }
}
