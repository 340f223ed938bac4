//! Construction of the modules `M(p)` inside the Weyl algebra.
//!
//! A module structure on `Q[x1..xn]` in which `e(i,n+1)` acts as
//! multiplication by `x_i` is pinned down by the images of `1` under the
//! remaining generators: `p_ij = e(i,j)·1`, `p_ii = h(i)·1` and
//! `q_i = e(n+1,i)·1`. [`GeneratorTables`] holds those polynomials and
//! [`Representation::from_tables`] turns them into operators:
//!
//! ```text
//! h(i)     ↦ p_ii + x_i D_i
//! e(i,j)   ↦ p_ij + x_i D_j
//! e(n+1,i) ↦ q_i - sum_r (p_ri D_r + p_rr D_i + x_r D_i D_r)
//! ```
//!
//! [`build_rep`] fills the tables from a single polynomial `p`.

mod classify;
mod sl2;
mod verify;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::lie::{basis, LieBasisElement, LieCombination};
use crate::poly::{int, DegreeMode, Monomial, PolyError, Polynomial, Rational};
use crate::weyl::WeylElement;

pub use classify::{classify_from_action, Inconsistency, Relation};
pub use sl2::{build_q_sl2, build_rep_sl2, Sl2Element, Sl2Rep};
pub use verify::{verify_representation, verify_sl2, PairFailure, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("table shape does not match rank {n}")]
    Shape { n: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The generator-on-one data `p_ij` (with `p_ii` the Cartan entries) and `q_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTables {
    n: usize,
    pij: Vec<Vec<Polynomial>>,
    qi: Vec<Polynomial>,
}

impl GeneratorTables {
    /// `pij[i-1][j-1]` and `qi[i-1]` hold the entries for 1-based `i, j`.
    pub fn new(n: usize, pij: Vec<Vec<Polynomial>>, qi: Vec<Polynomial>) -> Result<Self, RepError> {
        if n == 0 {
            return Err(RepError::ZeroRank);
        }
        let shape_ok = pij.len() == n
            && qi.len() == n
            && pij.iter().all(|row| row.len() == n)
            && pij.iter().flatten().chain(qi.iter()).all(|f| f.nvars() == n);
        if !shape_ok {
            return Err(RepError::Shape { n });
        }
        Ok(GeneratorTables { n, pij, qi })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn p(&self, i: usize, j: usize) -> &Polynomial {
        &self.pij[i - 1][j - 1]
    }

    pub fn q(&self, i: usize) -> &Polynomial {
        &self.qi[i - 1]
    }

    pub fn p_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.pij[i - 1][j - 1]
    }

    pub fn q_mut(&mut self, i: usize) -> &mut Polynomial {
        &mut self.qi[i - 1]
    }

    /// `p̄ = sum_i p_ii`.
    pub fn p_bar(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for i in 1..=self.n {
            out += self.p(i, i);
        }
        out
    }

    /// The basis element whose value on `1` is stored at `p(i, j)`.
    pub fn entry_generator(i: usize, j: usize) -> LieBasisElement {
        if i == j {
            LieBasisElement::H(i)
        } else {
            LieBasisElement::E(i, j)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Representation {
    n: usize,
    p: Polynomial,
    tables: GeneratorTables,
    rho: BTreeMap<LieBasisElement, WeylElement>,
}

impl Representation {
    /// Realizes the action determined by the tables. The stored parameter is
    /// `d'(p̄)`, which equals `p` whenever the tables come from [`build_rep`].
    pub fn from_tables(tables: GeneratorTables) -> Self {
        let n = tables.n;
        let mut rho = BTreeMap::new();
        let var = |i: usize| Monomial::var(n, i);
        let weyl_x = |i: usize| WeylElement::x(n, i).expect("index in range");
        let weyl_d = |i: usize| WeylElement::d(n, i).expect("index in range");
        for i in 1..=n {
            rho.insert(LieBasisElement::E(i, n + 1), weyl_x(i));
            for j in 1..=n {
                let op = WeylElement::from_polynomial(tables.p(i, j))
                    + WeylElement::poly_times_derivative(&Polynomial::from_monomial(var(i), int(1)), &var(j));
                rho.insert(GeneratorTables::entry_generator(i, j), op);
            }
        }
        for i in 1..=n {
            let mut op = WeylElement::from_polynomial(tables.q(i));
            for r in 1..=n {
                op -= &WeylElement::poly_times_derivative(tables.p(r, i), &var(r));
                op -= &WeylElement::poly_times_derivative(tables.p(r, r), &var(i));
                op -= &(&weyl_x(r) * &(&weyl_d(i) * &weyl_d(r)));
            }
            rho.insert(LieBasisElement::E(n + 1, i), op);
        }
        let p = tables
            .p_bar()
            .degree_section(DegreeMode::Full)
            .expect("full mode never fails");
        Representation { n, p, tables, rho }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn tables(&self) -> &GeneratorTables {
        &self.tables
    }

    pub fn pij(&self, i: usize, j: usize) -> &Polynomial {
        self.tables.p(i, j)
    }

    pub fn qi(&self, i: usize) -> &Polynomial {
        self.tables.q(i)
    }

    /// The operator of a basis element. Panics if `b` is not a basis element
    /// of sl(n+1).
    pub fn rho(&self, b: LieBasisElement) -> &WeylElement {
        &self.rho[&b]
    }

    pub fn rho_combination(&self, c: &LieCombination) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for (b, coeff) in c.terms() {
            out += &self.rho(*b).scale(coeff);
        }
        out
    }

    pub fn act(&self, b: LieBasisElement, f: &Polynomial) -> Result<Polynomial, RepError> {
        b.validate(self.n).map_err(|_| RepError::IndexOutOfRange {
            index: match b {
                LieBasisElement::E(i, j) => i.max(j),
                LieBasisElement::H(i) => i,
            },
            n: self.n,
        })?;
        Ok(self.rho(b).apply(f)?)
    }

    pub fn basis(&self) -> Vec<LieBasisElement> {
        basis(self.n)
    }
}

fn check_index(i: usize, n: usize) -> Result<(), RepError> {
    if i == 0 || i > n {
        Err(RepError::IndexOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

/// `p_ij = x_i dp/dx_j + δ_ij p(0)/n`.
pub fn build_pij(p: &Polynomial, i: usize, j: usize, n: usize) -> Result<Polynomial, RepError> {
    check_index(i, n)?;
    check_index(j, n)?;
    if p.nvars() != n {
        return Err(PolyError::DimensionMismatch { left: n, right: p.nvars() }.into());
    }
    let mut out = &Polynomial::var(n, i)? * &p.differentiate(j)?;
    if i == j {
        out += &Polynomial::constant(n, p.constant_term() / int(n as i64));
    }
    Ok(out)
}

/// The integrand `sum_r (p_ii^r p_ri + x_r p_ii^{ir} + p_ii^i p_rr)` whose
/// antiderivative in `x_i` determines `q_i`.
pub(crate) fn q_integrand(tables_p: impl Fn(usize, usize) -> Polynomial, i: usize, n: usize) -> Polynomial {
    let p_ii = tables_p(i, i);
    let p_ii_i = p_ii.diff(i);
    let mut sum = Polynomial::zero(n);
    for r in 1..=n {
        let p_ii_r = p_ii.diff(r);
        sum += &(&p_ii_r * &tables_p(r, i));
        let x_r = Polynomial::var(n, r).expect("index in range");
        sum += &(&x_r * &p_ii_r.diff(i));
        sum += &(&p_ii_i * &tables_p(r, r));
    }
    sum
}

/// `q_i = -(1/x_i) ∫_0^{x_i} integrand dx_i` from an arbitrary `p_ij` table.
pub(crate) fn q_from_table(
    tables_p: impl Fn(usize, usize) -> Polynomial,
    i: usize,
    n: usize,
) -> Result<Polynomial, PolyError> {
    let integrand = q_integrand(tables_p, i, n);
    Ok(-integrand.integrate_from_zero(i)?.exact_divide_by_var(i)?)
}

pub fn build_qi(p: &Polynomial, i: usize, n: usize) -> Result<Polynomial, RepError> {
    check_index(i, n)?;
    let mut table = vec![vec![Polynomial::zero(n); n]; n];
    for (a, row) in table.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            *entry = build_pij(p, a + 1, b + 1, n)?;
        }
    }
    Ok(q_from_table(|a, b| table[a - 1][b - 1].clone(), i, n)?)
}

/// The generator tables of `M(p)`.
pub fn build_tables(n: usize, p: &Polynomial) -> Result<GeneratorTables, RepError> {
    if n == 0 {
        return Err(RepError::ZeroRank);
    }
    let mut pij = Vec::with_capacity(n);
    for i in 1..=n {
        let row = (1..=n)
            .map(|j| build_pij(p, i, j, n))
            .collect::<Result<Vec<_>, _>>()?;
        pij.push(row);
    }
    let qi = (1..=n)
        .map(|i| q_from_table(|a, b| pij[a - 1][b - 1].clone(), i, n))
        .collect::<Result<Vec<_>, _>>()?;
    GeneratorTables::new(n, pij, qi)
}

/// `M(p)` as a map from the sl(n+1) basis to normal-ordered Weyl elements.
pub fn build_rep(n: usize, p: &Polynomial) -> Result<Representation, RepError> {
    let tables = build_tables(n, p)?;
    let mut rep = Representation::from_tables(tables);
    rep.p = p.clone();
    Ok(rep)
}

/// `p(0)/n`, the constant shift in every `p_ii`.
pub fn cartan_constant(p: &Polynomial, n: usize) -> Rational {
    p.constant_term() / int(n as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieBasisElement::{E, H};
    use crate::poly::rat;

    fn poly(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn pij_examples() {
        assert_eq!(build_pij(&poly("x1^2*x2", 2), 1, 2, 2).unwrap(), poly("x1^3", 2));
        assert_eq!(build_pij(&poly("x1", 2), 2, 1, 2).unwrap(), poly("x2", 2));
        let c = poly("5/3", 3);
        for i in 1..=3 {
            for j in 1..=3 {
                let want = if i == j { poly("5/9", 3) } else { Polynomial::zero(3) };
                assert_eq!(build_pij(&c, i, j, 3).unwrap(), want);
            }
        }
        assert!(build_pij(&c, 0, 1, 3).is_err());
        assert!(build_pij(&c, 1, 4, 3).is_err());
    }

    #[test]
    fn qi_examples() {
        let p = poly("x1", 2);
        assert_eq!(build_qi(&p, 1, 2).unwrap(), poly("-x1", 2));
        assert!(build_qi(&p, 2, 2).unwrap().is_zero());
        let c = poly("-7/2", 3);
        for i in 1..=3 {
            assert!(build_qi(&c, i, 3).unwrap().is_zero());
        }
        assert!(build_qi(&p, 3, 2).is_err());
    }

    #[test]
    fn rep_examples() {
        let rep = build_rep(1, &Polynomial::zero(1)).unwrap();
        assert_eq!(rep.rho(E(2, 1)).to_string(), "-x1 * D1^2");

        let rep = build_rep(2, &poly("x1", 2)).unwrap();
        assert_eq!(rep.rho(H(1)).to_string(), "x1 * D1 + x1");
        assert_eq!(rep.rho(E(1, 3)).to_string(), "x1");
    }

    #[test]
    fn constant_parameter_lowering_operator() {
        let n = 3;
        let c = rat(2, 5);
        let rep = build_rep(n, &Polynomial::constant(n, c.clone())).unwrap();
        for i in 1..=n {
            let mut want = WeylElement::d(n, i).unwrap().scale(&(-(&c * rat(4, 3))));
            for r in 1..=n {
                let xr = WeylElement::x(n, r).unwrap();
                let di = WeylElement::d(n, i).unwrap();
                let dr = WeylElement::d(n, r).unwrap();
                want -= &(&xr * &(&di * &dr));
            }
            assert_eq!(rep.rho(E(n + 1, i)), &want);
        }
    }

    #[test]
    fn from_tables_recovers_parameter() {
        let p = poly("x1^2 - 3*x1*x2 + 1/2", 2);
        let rep = build_rep(2, &p).unwrap();
        let again = Representation::from_tables(rep.tables().clone());
        assert_eq!(again.p(), &p);
        for b in rep.basis() {
            assert_eq!(again.rho(b), rep.rho(b));
        }
    }

    #[test]
    fn table_shape_checked() {
        let z = Polynomial::zero(2);
        assert!(GeneratorTables::new(2, vec![vec![z.clone(); 2]], vec![z.clone(); 2]).is_err());
        assert!(GeneratorTables::new(0, vec![], vec![]).is_err());
        assert!(build_rep(0, &Polynomial::zero(0)).is_err());
    }
}
