use std::fmt;

use serde::{Serialize, Serializer};

use crate::poly::{int, Polynomial};
use crate::weyl::WeylElement;

/// Standard basis `{x, y, h}` of sl(2) with `[h,x] = 2x`, `[h,y] = -2y`,
/// `[x,y] = h`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sl2Element {
    X,
    Y,
    H,
}

impl Sl2Element {
    pub const ALL: [Sl2Element; 3] = [Sl2Element::X, Sl2Element::Y, Sl2Element::H];

    /// `[self, other]` as integer coefficients on `(x, y, h)`.
    pub fn bracket(self, other: Sl2Element) -> [i64; 3] {
        use Sl2Element::*;
        match (self, other) {
            (X, Y) => [0, 0, 1],
            (Y, X) => [0, 0, -1],
            (H, X) => [2, 0, 0],
            (X, H) => [-2, 0, 0],
            (H, Y) => [0, -2, 0],
            (Y, H) => [0, 2, 0],
            _ => [0, 0, 0],
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Sl2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sl2Element::X => "x",
            Sl2Element::Y => "y",
            Sl2Element::H => "h",
        })
    }
}

impl Serialize for Sl2Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `q(x) = -(1/2x) ∫_0^x (p(t) p'(t) + t p''(t)) dt`.
///
/// Panics if `p` is not a one-variable polynomial.
pub fn build_q_sl2(p: &Polynomial) -> Polynomial {
    assert_eq!(p.nvars(), 1, "sl(2) parameters are one-variable polynomials");
    let dp = p.diff(1);
    let x = Polynomial::var(1, 1).expect("x1 exists");
    let integrand = &(p * &dp) + &(&x * &dp.diff(1));
    let integral = integrand.integrate_from_zero(1).expect("x1 exists");
    integral
        .exact_divide_by_var(1)
        .expect("antiderivative from zero is divisible by x")
        .scale(&crate::poly::rat(-1, 2))
}

/// The module `V(p)` on `Q[x]`: `x ↦ x`, `h ↦ p + 2xD`, `y ↦ q - pD - xD^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Rep {
    p: Polynomial,
    q: Polynomial,
    ops: [WeylElement; 3],
}

impl Sl2Rep {
    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn rho(&self, a: Sl2Element) -> &WeylElement {
        &self.ops[a.index()]
    }

    /// A copy with the operator of `a` replaced; used to probe the verifier.
    pub fn with_operator(&self, a: Sl2Element, op: WeylElement) -> Sl2Rep {
        let mut out = self.clone();
        out.ops[a.index()] = op;
        out
    }

    pub fn act(&self, a: Sl2Element, f: &Polynomial) -> Polynomial {
        self.rho(a).apply(f).expect("one-variable operand")
    }
}

pub fn build_rep_sl2(p: &Polynomial) -> Sl2Rep {
    let q = build_q_sl2(p);
    let x = WeylElement::x(1, 1).expect("x1 exists");
    let d = WeylElement::d(1, 1).expect("x1 exists");
    let h = WeylElement::from_polynomial(p) + (&x * &d).scale(&int(2));
    let y = WeylElement::from_polynomial(&q)
        - &WeylElement::from_polynomial(p) * &d
        - &x * &(&d * &d);
    Sl2Rep {
        p: p.clone(),
        q,
        ops: [x, y, h],
    }
}
