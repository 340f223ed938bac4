//! The Weyl algebra of polynomial-coefficient differential operators.
//!
//! Elements are kept in normal order: each term is `c * x^a * D^b` with all
//! multiplications to the left of all derivatives. Products are normalized
//! with the closed-form Leibniz rule
//! `D^m x^k = sum_t C(m,t) k!/(k-t)! x^(k-t) D^(m-t)`, applied per variable.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::poly::{write_power_product, write_signed_term, Monomial, PolyError, Polynomial, Rational};

/// Normal-ordered basis word `x^a D^b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylMonomial {
    pub x: Monomial,
    pub d: Monomial,
}

impl WeylMonomial {
    fn total_degree(&self) -> u32 {
        self.x.degree() + self.d.degree()
    }
}

impl Ord for WeylMonomial {
    /// Graded lex on the concatenated exponent vector `(a, b)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.x.exponents().cmp(other.x.exponents()))
            .then_with(|| self.d.exponents().cmp(other.d.exponents()))
    }
}

impl PartialOrd for WeylMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<WeylMonomial, Rational>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        WeylElement::from_polynomial(&Polynomial::constant(n, c))
    }

    pub fn one(n: usize) -> Self {
        WeylElement::scalar(n, Rational::one())
    }

    /// Multiplication by `f`.
    pub fn from_polynomial(f: &Polynomial) -> Self {
        let n = f.nvars();
        let mut out = WeylElement::zero(n);
        for (m, c) in f.terms() {
            out.add_term(m.clone(), Monomial::one(n), c.clone());
        }
        out
    }

    /// Multiplication by `x_i`.
    pub fn x(n: usize, i: usize) -> Result<Self, PolyError> {
        Ok(WeylElement::from_polynomial(&Polynomial::var(n, i)?))
    }

    /// The derivation `d/dx_i`.
    pub fn d(n: usize, i: usize) -> Result<Self, PolyError> {
        if i == 0 || i > n {
            return Err(PolyError::VarOutOfRange { index: i, n });
        }
        let mut out = WeylElement::zero(n);
        out.add_term(Monomial::one(n), Monomial::var(n, i), Rational::one());
        Ok(out)
    }

    /// `f * D^b` for a polynomial `f` and a derivative multi-index `b`.
    pub fn poly_times_derivative(f: &Polynomial, b: &Monomial) -> Self {
        let mut out = WeylElement::zero(f.nvars());
        for (m, c) in f.terms() {
            out.add_term(m.clone(), b.clone(), c.clone());
        }
        out
    }

    /// The Euler operator `sum_r x_r D_r`.
    pub fn euler(n: usize) -> Self {
        let mut out = WeylElement::zero(n);
        for r in 1..=n {
            out.add_term(Monomial::var(n, r), Monomial::var(n, r), Rational::one());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&WeylMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: &Monomial, d: &Monomial) -> Rational {
        self.terms
            .get(&WeylMonomial {
                x: x.clone(),
                d: d.clone(),
            })
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest total derivative order among the terms.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|w| w.d.degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, x: Monomial, d: Monomial, c: Rational) {
        debug_assert_eq!(x.nvars(), self.n);
        debug_assert_eq!(d.nvars(), self.n);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(WeylMonomial { x, d }) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> WeylElement {
        if c.is_zero() {
            return WeylElement::zero(self.n);
        }
        WeylElement {
            n: self.n,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    fn check(&self, other: &WeylElement) -> Result<(), PolyError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(PolyError::DimensionMismatch {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// Normal-ordered product `self * other`.
    pub fn multiply(&self, other: &WeylElement) -> Result<WeylElement, PolyError> {
        self.check(other)?;
        let mut out = WeylElement::zero(self.n);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let c = ca * cb;
                reorder_into(&mut out, &wa.x, &wa.d, &wb.x, &wb.d, &c);
            }
        }
        Ok(out)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement, PolyError> {
        let ab = self.multiply(other)?;
        let ba = other.multiply(self)?;
        Ok(ab - ba)
    }

    /// Applies the operator to a polynomial.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        if f.nvars() != self.n {
            return Err(PolyError::DimensionMismatch {
                left: self.n,
                right: f.nvars(),
            });
        }
        let mut out = Polynomial::zero(self.n);
        // group by derivative part so each derivative of f is computed once
        let mut by_d: BTreeMap<&Monomial, Vec<(&Monomial, &Rational)>> = BTreeMap::new();
        for (w, c) in &self.terms {
            by_d.entry(&w.d).or_default().push((&w.x, c));
        }
        for (d, xs) in by_d {
            let df = f.diff_multi(d);
            if df.is_zero() {
                continue;
            }
            for (x, c) in xs {
                out += &df.mul_monomial(x, c);
            }
        }
        Ok(out)
    }

    /// The multiplication part: terms with no derivative, as a polynomial.
    pub fn multiplication_part(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (w, c) in &self.terms {
            if w.d.is_one() {
                out.add_term(w.x.clone(), c.clone());
            }
        }
        out
    }
}

/// Adds `c * x^a D^b x^e D^g` in normal order to `out`.
fn reorder_into(
    out: &mut WeylElement,
    a: &Monomial,
    b: &Monomial,
    e: &Monomial,
    g: &Monomial,
    c: &Rational,
) {
    let n = a.nvars();
    // per variable: list of (t, coefficient) from D^m x^k = sum_t C(m,t) k^(t falling) x^(k-t) D^(m-t)
    let mut per_var: Vec<Vec<(u32, BigInt)>> = Vec::with_capacity(n);
    for i in 1..=n {
        let m = b.exp(i);
        let k = e.exp(i);
        let mut opts = Vec::with_capacity(m.min(k) as usize + 1);
        let mut binom = BigInt::one();
        let mut falling = BigInt::one();
        for t in 0..=m.min(k) {
            if t > 0 {
                binom = binom * (m - t + 1) / t;
                falling *= k - t + 1;
            }
            opts.push((t, &binom * &falling));
        }
        per_var.push(opts);
    }
    let mut choice = vec![0usize; n];
    loop {
        let mut coeff = c.clone();
        let mut xs = Vec::with_capacity(n);
        let mut ds = Vec::with_capacity(n);
        for i in 0..n {
            let (t, ref k) = per_var[i][choice[i]];
            coeff *= Rational::from_integer(k.clone());
            xs.push(a.exponents()[i] + e.exponents()[i] - t);
            ds.push(b.exponents()[i] - t + g.exponents()[i]);
        }
        out.add_term(Monomial::from_exponents(xs), Monomial::from_exponents(ds), coeff);
        // odometer over the choices
        let mut pos = 0;
        loop {
            if pos == n {
                return;
            }
            choice[pos] += 1;
            if choice[pos] < per_var[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

impl AddAssign<&WeylElement> for WeylElement {
    fn add_assign(&mut self, rhs: &WeylElement) {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        for (w, c) in &rhs.terms {
            self.add_term(w.x.clone(), w.d.clone(), c.clone());
        }
    }
}

impl SubAssign<&WeylElement> for WeylElement {
    fn sub_assign(&mut self, rhs: &WeylElement) {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        for (w, c) in &rhs.terms {
            self.add_term(w.x.clone(), w.d.clone(), -c);
        }
    }
}

impl Add for WeylElement {
    type Output = WeylElement;
    fn add(mut self, rhs: WeylElement) -> WeylElement {
        self += &rhs;
        self
    }
}

impl Sub for WeylElement {
    type Output = WeylElement;
    fn sub(mut self, rhs: WeylElement) -> WeylElement {
        self -= &rhs;
        self
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        self.scale(&-Rational::one())
    }
}

impl Neg for WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        -&self
    }
}

/// Panics on a variable-count mismatch; use [`WeylElement::multiply`] for the
/// checked form.
impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        self.multiply(rhs).expect("variable count mismatch")
    }
}

struct Word<'a>(&'a WeylMonomial);

impl fmt::Display for Word<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.0;
        match (w.x.is_one(), w.d.is_one()) {
            (true, true) => f.write_str("1"),
            (false, true) => write_power_product(f, "x", w.x.exponents()),
            (true, false) => write_power_product(f, "D", w.d.exponents()),
            (false, false) => {
                write_power_product(f, "x", w.x.exponents())?;
                f.write_str(" * ")?;
                write_power_product(f, "D", w.d.exponents())
            }
        }
    }
}

impl fmt::Display for WeylElement {
    /// Descending graded-lex order, e.g. `-x1 * D1^2 + 3/2 * D1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, c)) in self.terms.iter().rev().enumerate() {
            let word = Word(w);
            let body: Option<&dyn fmt::Display> = if w.x.is_one() && w.d.is_one() {
                None
            } else {
                Some(&word)
            };
            write_signed_term(f, idx == 0, c, body, " * ")?;
        }
        Ok(())
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn x(n: usize, i: usize) -> WeylElement {
        WeylElement::x(n, i).unwrap()
    }
    fn d(n: usize, i: usize) -> WeylElement {
        WeylElement::d(n, i).unwrap()
    }

    #[test]
    fn canonical_commutation() {
        let lhs = &d(1, 1) * &x(1, 1);
        let expected = &(&x(1, 1) * &d(1, 1)) + &WeylElement::one(1);
        assert_eq!(lhs, expected);
        assert_eq!(lhs.to_string(), "x1 * D1 + 1");
        assert_eq!((&x(1, 1) * &d(1, 1)).to_string(), "x1 * D1");
    }

    #[test]
    fn second_order_reorder_matches_brute_force() {
        // D^2 x = x D^2 + 2 D: checked by applying both sides to x^m, m <= 5
        let d2 = &d(1, 1) * &d(1, 1);
        let lhs = &d2 * &x(1, 1);
        for m in 0..=5u32 {
            let f = Polynomial::from_terms(1, [(vec![m], int(1))]);
            let direct = d2.apply(&x(1, 1).apply(&f).unwrap()).unwrap();
            assert_eq!(lhs.apply(&f).unwrap(), direct);
        }
        let expected = &(&x(1, 1) * &d2) + &d(1, 1).scale(&int(2));
        assert_eq!(lhs, expected);
    }

    #[test]
    fn euler_commutators() {
        let e = WeylElement::euler(3);
        for i in 1..=3 {
            assert_eq!(d(3, i).commutator(&e).unwrap(), d(3, i));
        }
        let xd = &x(1, 1) * &d(1, 1);
        assert_eq!(xd.commutator(&x(1, 1)).unwrap(), x(1, 1));
        assert!(xd.commutator(&xd).unwrap().is_zero());
    }

    #[test]
    fn apply_examples() {
        let xd = &x(1, 1) * &d(1, 1);
        let f = Polynomial::parse("x1^3", 1).unwrap();
        assert_eq!(xd.apply(&f).unwrap(), f.scale(&int(3)));
        let op = &x(2, 1) * &d(2, 2);
        assert_eq!(
            op.apply(&Polynomial::parse("x2^2", 2).unwrap()).unwrap(),
            Polynomial::parse("2*x1*x2", 2).unwrap()
        );
    }

    #[test]
    fn dimension_mismatch() {
        assert!(x(1, 1).multiply(&x(2, 1)).is_err());
        assert!(x(1, 1).apply(&Polynomial::zero(2)).is_err());
        assert!(WeylElement::d(2, 3).is_err());
    }

    #[test]
    fn display_mixed() {
        let op = WeylElement::poly_times_derivative(
            &Polynomial::parse("-x1^2*x2", 2).unwrap(),
            &Monomial::from_exponents(vec![0, 2]),
        ) + WeylElement::scalar(2, int(3));
        assert_eq!(op.to_string(), "-x1^2*x2 * D2^2 + 3");
    }
}
