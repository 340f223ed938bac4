//! Symbolic basis of sl(n+1) and its structure constants.
//!
//! The basis is `{ e(i,j) : 1 <= i,j <= n+1, i != j } ∪ { h(1), ..., h(n) }`
//! with `h(i) = e(i,i) - I/(n+1)`. Brackets are always re-expressed in this
//! basis; `h(n+1) = -(h(1) + ... + h(n))` never appears in output.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("{element} is not a basis element of sl({size})")]
    OutOfRange { element: String, size: usize },
    #[error("cannot parse Lie basis element {0:?}; expected e(i,j) or h(i)")]
    Syntax(String),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LieBasisElement {
    E(usize, usize),
    H(usize),
}

use LieBasisElement::{E, H};

impl LieBasisElement {
    pub fn validate(self, n: usize) -> Result<Self, LieError> {
        let ok = match self {
            E(i, j) => i != j && (1..=n + 1).contains(&i) && (1..=n + 1).contains(&j),
            H(i) => (1..=n).contains(&i),
        };
        if ok {
            Ok(self)
        } else {
            Err(LieError::OutOfRange {
                element: self.to_string(),
                size: n + 1,
            })
        }
    }
}

impl fmt::Display for LieBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            E(i, j) => write!(f, "e({},{})", i, j),
            H(i) => write!(f, "h({})", i),
        }
    }
}

impl Serialize for LieBasisElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for LieBasisElement {
    type Err = LieError;

    /// Accepts `e(i,j)` and `h(i)`, with optional spaces.
    fn from_str(s: &str) -> Result<Self, LieError> {
        let err = || LieError::Syntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, rest) = compact.split_at(compact.len().min(1));
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| err())?;
        match (head, nums.as_slice()) {
            ("e", [i, j]) => Ok(E(*i, *j)),
            ("h", [i]) => Ok(H(*i)),
            _ => Err(err()),
        }
    }
}

/// The fixed basis of sl(n+1): all `e(i,j)` in lexicographic order, then
/// `h(1), ..., h(n)`.
pub fn basis(n: usize) -> Vec<LieBasisElement> {
    let mut out = Vec::with_capacity((n + 1) * (n + 1) - 1);
    for i in 1..=n + 1 {
        for j in 1..=n + 1 {
            if i != j {
                out.push(E(i, j));
            }
        }
    }
    out.extend((1..=n).map(H));
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieCombination {
    n: usize,
    terms: BTreeMap<LieBasisElement, Rational>,
}

impl LieCombination {
    pub fn zero(n: usize) -> Self {
        LieCombination {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(n: usize, b: LieBasisElement) -> Self {
        let mut c = LieCombination::zero(n);
        c.add(b, Rational::one());
        c
    }

    /// `h(1) + ... + h(n)`.
    pub fn h_bar(n: usize) -> Self {
        let mut c = LieCombination::zero(n);
        for i in 1..=n {
            c.add(H(i), Rational::one());
        }
        c
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LieBasisElement, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: LieBasisElement) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, b: LieBasisElement) -> bool {
        self.terms.contains_key(&b)
    }

    pub fn add(&mut self, b: LieBasisElement, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add_combination(&mut self, other: &LieCombination, scale: &Rational) {
        for (b, c) in &other.terms {
            self.add(*b, c * scale);
        }
    }

    /// Adds `c * e(i,i)` modulo the identity, i.e. `c * h(i)` with
    /// `h(n+1) = -sum h(k)`. Only valid inside traceless combinations.
    fn add_diagonal(&mut self, i: usize, c: Rational) {
        if i <= self.n {
            self.add(H(i), c);
        } else {
            for k in 1..=self.n {
                self.add(H(k), -c.clone());
            }
        }
    }
}

impl fmt::Display for LieCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (b, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{}", b)?;
            } else {
                write!(f, "({})*{}", c, b)?;
            }
        }
        Ok(())
    }
}

/// `[a, b]` in the fixed basis.
pub fn bracket(
    a: LieBasisElement,
    b: LieBasisElement,
    n: usize,
) -> Result<LieCombination, LieError> {
    a.validate(n)?;
    b.validate(n)?;
    let mut out = LieCombination::zero(n);
    let one = Rational::one();
    match (a, b) {
        (H(_), H(_)) => {}
        (H(k), E(i, j)) => {
            // [e_kk - I/(n+1), e_ij] = (δ_ki - δ_kj) e_ij
            let c = i64::from(k == i) - i64::from(k == j);
            out.add(E(i, j), Rational::from_integer(c.into()));
        }
        (E(i, j), H(k)) => {
            let c = i64::from(k == j) - i64::from(k == i);
            out.add(E(i, j), Rational::from_integer(c.into()));
        }
        (E(i, j), E(k, l)) => {
            // [e_ij, e_kl] = δ_jk e_il - δ_li e_kj
            if j == k {
                if i == l {
                    out.add_diagonal(i, one.clone());
                } else {
                    out.add(E(i, l), one.clone());
                }
            }
            if l == i {
                if k == j {
                    out.add_diagonal(k, -one.clone());
                } else {
                    out.add(E(k, j), -one.clone());
                }
            }
        }
    }
    Ok(out)
}
