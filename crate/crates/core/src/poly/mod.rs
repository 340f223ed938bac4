//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] lives in `Q[x1, ..., xn]` for a fixed variable count `n`.
//! Besides ring arithmetic this module carries the degree operators used
//! throughout the crate: the Euler operator `d = sum x_i d/dx_i`, its
//! single-variable pieces `d_i = x_i d/dx_i`, and their sections `d'`, `d_i'`
//! which invert them away from the kernel.
//!
//! Variable indices in the public API are 1-based.

mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use monomial::Monomial;
pub(crate) use monomial::write_power_product;
pub use parse::{parse_polynomial, ParseError, ParseErrorKind};

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable index {index} out of range for {n} variables")]
    VarOutOfRange { index: usize, n: usize },
    #[error("polynomial is not divisible by x{var}")]
    NotDivisible { var: usize },
    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Selects the full Euler operator or a single-variable degree operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeMode {
    Full,
    Single(usize),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(n);
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, Rational::one())
    }

    /// The variable `x_i`.
    pub fn var(n: usize, i: usize) -> Result<Self, PolyError> {
        check_index(n, i)?;
        Ok(Polynomial::from_monomial(Monomial::var(n, i), Rational::one()))
    }

    pub fn from_monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Polynomial::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length must equal n");
            p.add_term(Monomial::from_exponents(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in the single variable `x_i`.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(i)).max()
    }

    /// `f(0, ..., 0)`.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.n))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.nvars(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (k, a) in &self.terms {
            out.terms.insert(k.mul(m), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_var(&self, i: usize) -> Result<(), PolyError> {
        check_index(self.n, i)
    }

    pub(crate) fn same_space(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    fn map_terms<F>(&self, mut f: F) -> Polynomial
    where
        F: FnMut(&Monomial, &Rational) -> Option<(Monomial, Rational)>,
    {
        let mut out = Polynomial::zero(self.n);
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, c) {
                out.add_term(m2, c2);
            }
        }
        out
    }

    /// Formal partial derivative `df/dx_i`.
    pub fn differentiate(&self, i: usize) -> Result<Polynomial, PolyError> {
        self.check_var(i)?;
        Ok(self.diff(i))
    }

    pub(crate) fn diff(&self, i: usize) -> Polynomial {
        self.map_terms(|m, c| {
            let e = m.exp(i);
            (e > 0).then(|| (m.with_exp(i, e - 1), c * int(e as i64)))
        })
    }

    /// Applies `d^b = prod_i (d/dx_i)^{b_i}` for an exponent vector `b`.
    pub(crate) fn diff_multi(&self, b: &Monomial) -> Polynomial {
        self.map_terms(|m, c| {
            let mut scale = BigInt::one();
            let mut exps = m.exponents().to_vec();
            for (e, &k) in exps.iter_mut().zip(b.exponents()) {
                if k > *e {
                    return None;
                }
                for t in 0..k {
                    scale *= *e - t;
                }
                *e -= k;
            }
            Some((Monomial::from_exponents(exps), c * Rational::from_integer(scale)))
        })
    }

    /// `d(f) = sum_i x_i f^i` or `d_i(f) = x_i f^i`: each monomial is scaled by
    /// its total degree or by its `x_i`-degree.
    pub fn degree_operator(&self, mode: DegreeMode) -> Result<Polynomial, PolyError> {
        let weight = self.mode_weight(mode)?;
        Ok(self.map_terms(|m, c| {
            let w = weight(m);
            (w > 0).then(|| (m.clone(), c * int(w as i64)))
        }))
    }

    /// The sections `d'` and `d_i'`: divide each monomial by its (total or
    /// `x_i`-) degree, leaving degree-zero monomials fixed.
    pub fn degree_section(&self, mode: DegreeMode) -> Result<Polynomial, PolyError> {
        let weight = self.mode_weight(mode)?;
        Ok(self.map_terms(|m, c| {
            let w = weight(m);
            if w == 0 {
                Some((m.clone(), c.clone()))
            } else {
                Some((m.clone(), c / int(w as i64)))
            }
        }))
    }

    fn mode_weight(&self, mode: DegreeMode) -> Result<impl Fn(&Monomial) -> u32, PolyError> {
        if let DegreeMode::Single(i) = mode {
            self.check_var(i)?;
        }
        Ok(move |m: &Monomial| match mode {
            DegreeMode::Full => m.degree(),
            DegreeMode::Single(i) => m.exp(i),
        })
    }

    /// Antiderivative in `x_i` vanishing on `x_i = 0`.
    pub fn integrate_from_zero(&self, i: usize) -> Result<Polynomial, PolyError> {
        self.check_var(i)?;
        Ok(self.map_terms(|m, c| {
            let e = m.exp(i) + 1;
            Some((m.with_exp(i, e), c / int(e as i64)))
        }))
    }

    /// The `g` with `x_i * g = f`; fails if some monomial has no `x_i`.
    pub fn exact_divide_by_var(&self, i: usize) -> Result<Polynomial, PolyError> {
        self.check_var(i)?;
        if self.terms.keys().any(|m| m.exp(i) == 0) {
            return Err(PolyError::NotDivisible { var: i });
        }
        Ok(self.map_terms(|m, c| Some((m.with_exp(i, m.exp(i) - 1), c.clone()))))
    }

    /// `f(x1, ..., 0_i, ..., xn)`.
    pub fn set_var_zero(&self, i: usize) -> Result<Polynomial, PolyError> {
        self.check_var(i)?;
        Ok(self.map_terms(|m, c| (m.exp(i) == 0).then(|| (m.clone(), c.clone()))))
    }

    /// Sum of the terms of total degree `< m`.
    pub fn truncate_below(&self, m: u32) -> Polynomial {
        self.map_terms(|k, c| (k.degree() < m).then(|| (k.clone(), c.clone())))
    }

    /// Homogeneous component of total degree `m`.
    pub fn homogeneous_part(&self, m: u32) -> Polynomial {
        self.map_terms(|k, c| (k.degree() == m).then(|| (k.clone(), c.clone())))
    }

    pub fn parse(text: &str, n: usize) -> Result<Polynomial, PolyError> {
        Ok(parse_polynomial(text, n)?)
    }
}

fn check_index(n: usize, i: usize) -> Result<(), PolyError> {
    if i == 0 || i > n {
        Err(PolyError::VarOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = Polynomial::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Writes a coefficient-times-body term in canonical form. `body` is `None`
/// for the constant monomial.
pub(crate) fn write_signed_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Rational,
    body: Option<&dyn fmt::Display>,
    joiner: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if neg { " - " } else { " + " })?;
    }
    let a = c.abs();
    match body {
        None => write!(f, "{}", a),
        Some(b) if a.is_one() => write!(f, "{}", b),
        Some(b) => write!(f, "{}{}{}", a, joiner, b),
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: descending graded-lex order, e.g. `x1^2*x2 - 1/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let body: Option<&dyn fmt::Display> = if m.is_one() { None } else { Some(m) };
            write_signed_term(f, idx == 0, c, body, "*")?;
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
