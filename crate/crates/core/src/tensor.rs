//! Tensor products `V(p) ⊗ L(k)` and their decomposition.
//!
//! An element of `V(p) ⊗ L(k)` is stored as `k+1` polynomials in `x1`, the
//! coordinates against the weight basis `v_0, ..., v_k` of `L(k)`
//! (`h v_j = (k-2j) v_j`). With `X = x⊗1 + 1⊗x` the tensor product is again
//! free over `Q[X]`, and a summand `V(p')` is the `Q[X]`-span of one
//! generator `g` with `h g = p'(X) g` and `y g = q'(X) g`.
//!
//! Certificates use the grading in which `x^d ⊗ v_j` has level `d + k - j`.
//! `X` raises level by exactly one, so if the lowest-level parts of
//! `X^c g_i` form a basis of each level up to `D`, the copies are
//! independent and together span everything up to level `D`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::Matrix;
use crate::poly::{int, Monomial, Polynomial, Rational};
use crate::rep::{build_q_sl2, build_rep_sl2, Sl2Element, Sl2Rep};

/// The simple module `L(k)` of dimension `k+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteModule {
    k: u32,
    x: Matrix,
    y: Matrix,
    h: Matrix,
}

impl FiniteModule {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.k as usize + 1
    }

    pub fn matrix(&self, a: Sl2Element) -> &Matrix {
        match a {
            Sl2Element::X => &self.x,
            Sl2Element::Y => &self.y,
            Sl2Element::H => &self.h,
        }
    }

    pub fn weights(&self) -> Vec<i64> {
        (0..=self.k as i64).map(|j| self.k as i64 - 2 * j).collect()
    }

    pub fn bracket_relations_hold(&self) -> bool {
        self.h.commutator(&self.x) == self.x.scale(&int(2))
            && self.h.commutator(&self.y) == self.y.scale(&int(-2))
            && self.x.commutator(&self.y) == self.h
    }
}

/// `x v_j = j(k-j+1) v_(j-1)`, `y v_j = v_(j+1)`, `h v_j = (k-2j) v_j`.
pub fn build_finite_module(k: u32) -> FiniteModule {
    let dim = k as usize + 1;
    let mut x = Matrix::zeros(dim, dim);
    let mut y = Matrix::zeros(dim, dim);
    let mut h = Matrix::zeros(dim, dim);
    let k = k as i64;
    for j in 0..dim {
        let jj = j as i64;
        h[(j, j)] = int(k - 2 * jj);
        if j > 0 {
            x[(j - 1, j)] = int(jj * (k - jj + 1));
        }
        if j + 1 < dim {
            y[(j + 1, j)] = Rational::one();
        }
    }
    FiniteModule { k: k as u32, x, y, h }
}

fn weight_multiset(k: u32, m: u32) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::new();
    for a in 0..=k as i64 {
        for b in 0..=m as i64 {
            *out.entry(k as i64 - 2 * a + m as i64 - 2 * b).or_insert(0) += 1;
        }
    }
    out
}

/// Highest weights of the simple summands of `L(k) ⊗ L(m)`, largest first.
pub fn clebsch_gordan_components(k: u32, m: u32) -> Vec<u64> {
    let (k, m) = if k >= m { (k, m) } else { (m, k) };
    let formula: Vec<u64> = (0..=m).map(|i| (k + m - 2 * i) as u64).collect();

    let mut weights = weight_multiset(k, m);
    let mut peeled = Vec::new();
    while let Some((&top, _)) = weights.iter().next_back() {
        peeled.push(top as u64);
        let mut w = top;
        while w >= -top {
            let slot = weights.get_mut(&w).expect("weight strings are complete");
            *slot -= 1;
            if *slot == 0 {
                weights.remove(&w);
            }
            w -= 2;
        }
    }
    assert_eq!(peeled, formula, "weight count disagrees with Clebsch-Gordan");
    formula
}

fn mono(d: u32) -> Monomial {
    Monomial::from_exponents(vec![d])
}

fn xpow(d: u32) -> Polynomial {
    Polynomial::from_monomial(mono(d), Rational::one())
}

/// Coordinates `(f_0, ..., f_k)` of `Σ f_j ⊗ v_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TensorElement {
    components: Vec<Polynomial>,
}

impl TensorElement {
    pub fn new(components: Vec<Polynomial>) -> Self {
        assert!(!components.is_empty(), "L(k) has dimension at least 1");
        assert!(components.iter().all(|c| c.nvars() == 1), "components are polynomials in x1");
        TensorElement { components }
    }

    pub fn zero(k: u32) -> Self {
        TensorElement::new(vec![Polynomial::zero(1); k as usize + 1])
    }

    /// `x^d ⊗ v_j`.
    pub fn basis(k: u32, j: usize, d: u32) -> Self {
        let mut out = TensorElement::zero(k);
        out.components[j] = xpow(d);
        out
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn k(&self) -> u32 {
        self.components.len() as u32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> TensorElement {
        TensorElement::new(self.components.iter().map(|f| f.scale(c)).collect())
    }

    /// Terms as `((j, d), coefficient)`.
    pub fn coordinates(&self) -> impl Iterator<Item = ((usize, u32), &Rational)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(j, f)| f.terms().map(move |(m, c)| ((j, m.exp(1)), c)))
    }

    fn level(&self, j: usize, d: u32) -> u32 {
        d + self.k() - j as u32
    }

    pub fn lowest_level(&self) -> Option<u32> {
        self.coordinates().map(|((j, d), _)| self.level(j, d)).min()
    }

    /// Coefficients at level `e`, against `x^(e-k+j) ⊗ v_j` for
    /// `j = max(0, k-e), ..., k`.
    pub fn level_part(&self, e: u32) -> Vec<Rational> {
        let k = self.k();
        (k.saturating_sub(e) as usize..=k as usize)
            .map(|j| self.components[j].coeff(&mono(e + j as u32 - k)))
            .collect()
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, c) in self.components.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str(")")
    }
}

impl std::ops::Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        assert_eq!(self.components.len(), rhs.components.len(), "tensor factor mismatch");
        TensorElement::new(self.components.iter().zip(&rhs.components).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        assert_eq!(self.components.len(), rhs.components.len(), "tensor factor mismatch");
        TensorElement::new(self.components.iter().zip(&rhs.components).map(|(a, b)| a - b).collect())
    }
}

/// `a ↦ a⊗1 + 1⊗a` on `V(p) ⊗ L(k)`.
#[derive(Debug, Clone)]
pub struct TensorAction {
    base: Sl2Rep,
    module: FiniteModule,
}

pub fn tensor_representation(p: &Polynomial, k: u32) -> TensorAction {
    TensorAction {
        base: build_rep_sl2(p),
        module: build_finite_module(k),
    }
}

impl TensorAction {
    pub fn k(&self) -> u32 {
        self.module.k()
    }

    pub fn p(&self) -> &Polynomial {
        self.base.p()
    }

    pub fn base(&self) -> &Sl2Rep {
        &self.base
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    fn apply_matrix(m: &Matrix, g: &TensorElement) -> TensorElement {
        let comps = (0..m.rows())
            .map(|i| {
                let mut acc = Polynomial::zero(1);
                for (j, f) in g.components.iter().enumerate() {
                    let c = &m[(i, j)];
                    if !c.is_zero() {
                        acc += &f.scale(c);
                    }
                }
                acc
            })
            .collect();
        TensorElement::new(comps)
    }

    pub fn apply(&self, a: Sl2Element, g: &TensorElement) -> TensorElement {
        assert_eq!(g.k(), self.k(), "tensor factor mismatch");
        let own = TensorElement::new(g.components.iter().map(|f| self.base.act(a, f)).collect());
        &own + &Self::apply_matrix(self.module.matrix(a), g)
    }

    /// `f(X) g`, expanded as `Σ_t f^(t)/t! N^t g` with `N` the matrix of `x`.
    pub fn poly_action(&self, f: &Polynomial, g: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.k());
        let mut deriv = f.clone();
        let mut shifted = g.clone();
        let mut fact = Rational::one();
        for t in 0..=self.k() {
            if deriv.is_zero() || shifted.is_zero() {
                break;
            }
            if t > 0 {
                fact *= int(t as i64);
            }
            let coeff = deriv.scale(&(Rational::one() / &fact));
            let term = TensorElement::new(shifted.components.iter().map(|c| &coeff * c).collect());
            out = &out + &term;
            deriv = deriv.diff(1);
            shifted = Self::apply_matrix(&self.module.x, &shifted);
        }
        out
    }

    /// Exact bracket check on every `x^d ⊗ v_j` with `d <= degree`.
    pub fn bracket_relations_hold(&self, degree: u32) -> bool {
        use Sl2Element::*;
        let k = self.k();
        let cases: Vec<(usize, u32)> = (0..=k as usize)
            .flat_map(|j| (0..=degree).map(move |d| (j, d)))
            .collect();
        cases.par_iter().all(|&(j, d)| {
            let v = TensorElement::basis(k, j, d);
            let comm = |a, b| &self.apply(a, &self.apply(b, &v)) - &self.apply(b, &self.apply(a, &v));
            comm(H, X) == self.apply(X, &v).scale(&int(2))
                && comm(H, Y) == self.apply(Y, &v).scale(&int(-2))
                && comm(X, Y) == self.apply(H, &v)
        })
    }

    /// `h g = p'(X) g` and `y g = q'(X) g` for `p' = p + shift`.
    pub fn is_generator(&self, g: &TensorElement, shift: i64) -> bool {
        let ps = self.p() + &Polynomial::constant(1, int(shift));
        let qs = build_q_sl2(&ps);
        self.apply(Sl2Element::H, g) == self.poly_action(&ps, g)
            && self.apply(Sl2Element::Y, g) == self.poly_action(&qs, g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelRank {
    pub level: u32,
    pub rank: usize,
    pub dim: usize,
}

fn level_rank(vectors: &[Vec<Rational>], level: u32, dim: usize) -> LevelRank {
    let rank = if vectors.is_empty() {
        0
    } else {
        Matrix::from_columns(vectors, dim).rank()
    };
    LevelRank { level, rank, dim }
}

pub const SPLIT_CHECK_DEGREE: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitChecks {
    /// `h φ(1) = φ(p-1)`
    pub h_phi: bool,
    /// `y φ(1) = φ(q + (p-p(0))/2x)`
    pub y_phi: bool,
    /// `h ψ(1) = ψ(p+1)`
    pub h_psi: bool,
    /// `y ψ(1) = ψ(q - (p-p(0))/2x)`
    pub y_psi: bool,
    /// `φ(x f) - ψ(f) = ((1-p(0)) f, 0)` on monomials up to the check degree.
    pub relation: bool,
    /// Leading-part ranks of `φ(x^e), ψ(x^(e-1))` per level.
    pub rank_profile: Vec<LevelRank>,
}

impl SplitChecks {
    pub fn passed(&self) -> bool {
        self.h_phi
            && self.y_phi
            && self.h_psi
            && self.y_psi
            && self.relation
            && self.rank_profile.iter().all(|r| r.rank == r.dim)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct L1Split {
    pub p: Polynomial,
    pub phi_gen: TensorElement,
    pub psi_gen: TensorElement,
    pub checks: SplitChecks,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum SplitError {
    /// `p(0) = 1`: `φ(x f) = ψ(f)`, so the two copies are not independent.
    #[error("p(0) = 1: the images of phi and psi are not independent")]
    DegenerateSplit {
        phi_gen: TensorElement,
        psi_gen: TensorElement,
        relation: bool,
        rank_profile: Vec<LevelRank>,
    },
}

/// `φ(1) = ((p-p(0))/2x, 1)` and `ψ(1) = ((p+p(0))/2, x)` in `V(p) ⊗ L(1)`.
pub fn split_tensor_l1(p: &Polynomial) -> Result<L1Split, SplitError> {
    assert_eq!(p.nvars(), 1, "sl(2) parameters are one-variable polynomials");
    let act = tensor_representation(p, 1);
    let p0 = p.constant_term();
    let half = Rational::new(1.into(), 2.into());
    let r = (p - &Polynomial::constant(1, p0.clone()))
        .exact_divide_by_var(1)
        .expect("p - p(0) has no constant term")
        .scale(&half);
    let phi_gen = TensorElement::new(vec![r.clone(), Polynomial::one(1)]);
    let psi_gen = TensorElement::new(vec![
        (p + &Polynomial::constant(1, p0.clone())).scale(&half),
        xpow(1),
    ]);
    let phi = |f: &Polynomial| act.poly_action(f, &phi_gen);
    let psi = |f: &Polynomial| act.poly_action(f, &psi_gen);
    let q = act.base().q().clone();
    let shifted = |c: i64| p + &Polynomial::constant(1, int(c));

    let h_phi = act.apply(Sl2Element::H, &phi_gen) == phi(&shifted(-1));
    let y_phi = act.apply(Sl2Element::Y, &phi_gen) == phi(&(&q + &r));
    let h_psi = act.apply(Sl2Element::H, &psi_gen) == psi(&shifted(1));
    let y_psi = act.apply(Sl2Element::Y, &psi_gen) == psi(&(&q - &r));

    let one_minus = Rational::one() - &p0;
    let relation = (0..=SPLIT_CHECK_DEGREE).all(|a| {
        let f = xpow(a);
        let lhs = &phi(&xpow(a + 1)) - &psi(&f);
        lhs == TensorElement::new(vec![f.scale(&one_minus), Polynomial::zero(1)])
    });

    let rank_profile: Vec<LevelRank> = (0..=SPLIT_CHECK_DEGREE)
        .into_par_iter()
        .map(|e| {
            let mut vectors = vec![phi(&xpow(e)).level_part(e)];
            if e > 0 {
                vectors.push(psi(&xpow(e - 1)).level_part(e));
            }
            level_rank(&vectors, e, if e == 0 { 1 } else { 2 })
        })
        .collect();

    if p0.is_one() {
        return Err(SplitError::DegenerateSplit {
            phi_gen,
            psi_gen,
            relation,
            rank_profile,
        });
    }
    Ok(L1Split {
        p: p.clone(),
        phi_gen,
        psi_gen,
        checks: SplitChecks {
            h_phi,
            y_phi,
            h_psi,
            y_psi,
            relation,
            rank_profile,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub shift: i64,
    pub generator: TensorElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub p: Polynomial,
    pub k: u32,
    pub summands: Vec<Summand>,
    pub certified_up_to_degree: u32,
}

impl Decomposition {
    pub fn shifts(&self) -> Vec<i64> {
        self.summands.iter().map(|s| s.shift).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum DecompositionFailure {
    #[error("truncation degree {degree} is below the minimum {minimum}")]
    TruncationTooSmall { degree: u32, minimum: u32 },
    #[error("no generator for shift {shift}")]
    NoGenerator { shift: i64 },
    #[error("generator for shift {shift} is not unique ({dimension} independent solutions)")]
    Ambiguous { shift: i64, dimension: usize },
    #[error("rank drops at degree {degree}: {rank} of {dim}")]
    RankDrop { degree: u32, rank: usize, dim: usize },
}

/// `k + deg p + 6`.
pub fn default_truncation(p: &Polynomial, k: u32) -> u32 {
    k + p.degree().unwrap_or(0) + 6
}

pub fn minimum_truncation(p: &Polynomial, k: u32) -> u32 {
    k + p.degree().unwrap_or(0) + 2
}

/// Solutions of `h g = p'(X) g` for `p' = p + k - 2i`.
///
/// Component `j` of `(h - p'(X)) g` is
/// `(2(i-j) + 2 x D) f_j - Σ_(t>=1) p^(t)/t! (N^t g)_j`, and `N` only reads
/// components above `j`, so the system is solved from `j = k` down. The
/// diagonal part scales `x^d` by `2(i - j + d)`, which vanishes once for each
/// `j >= i`; there the coefficient of `f_j` is a free parameter and the
/// right-hand side gives one linear constraint. Returns one solution per
/// parameter together with the constraint values, indexed by `j - i`.
fn h_eigen_solutions(act: &TensorAction, i: usize) -> Vec<(TensorElement, Vec<Rational>)> {
    let k = act.k() as usize;
    let x = act.module.matrix(Sl2Element::X);
    // p^(t) / t!
    let mut derivs = vec![act.p().clone()];
    let mut raw = act.p().clone();
    let mut fact = Rational::one();
    for t in 1..=k {
        fact *= int(t as i64);
        raw = raw.diff(1);
        derivs.push(raw.scale(&(Rational::one() / &fact)));
    }
    (i..=k)
        .into_par_iter()
        .map(|param| {
            let mut comps = vec![Polynomial::zero(1); k + 1];
            let mut constraints = vec![Rational::zero(); k + 1 - i];
            for j in (0..=k).rev() {
                let mut rhs = Polynomial::zero(1);
                let mut ladder = Rational::one();
                for t in 1..=k - j {
                    // (N^t g)_j = Π_(l=j+1..j+t) l(k-l+1) f_(j+t)
                    ladder *= &x[(j + t - 1, j + t)];
                    if !comps[j + t].is_zero() && !derivs[t].is_zero() {
                        rhs += &(&derivs[t] * &comps[j + t]).scale(&ladder);
                    }
                }
                let mut f = Polynomial::zero(1);
                for (m, c) in rhs.terms() {
                    let d = m.exp(1) as i64;
                    let eig = 2 * (i as i64 - j as i64 + d);
                    if eig == 0 {
                        constraints[j - i] = c.clone();
                    } else {
                        f.add_term(m.clone(), c / int(eig));
                    }
                }
                if j >= i && j == param {
                    f.add_term(mono((j - i) as u32), Rational::one());
                }
                comps[j] = f;
            }
            (TensorElement::new(comps), constraints)
        })
        .collect()
}

/// The generator of the summand `V(p + shift)`, normalized so that the last
/// nonzero component has lowest coefficient 1.
fn solve_generator(act: &TensorAction, shift: i64) -> Result<TensorElement, DecompositionFailure> {
    let k = act.k() as i64;
    let i = ((k - shift) / 2) as usize;
    let qs = build_q_sl2(&(act.p() + &Polynomial::constant(1, int(shift))));
    let solutions = h_eigen_solutions(act, i);
    let y_images: Vec<TensorElement> = solutions
        .par_iter()
        .map(|(g, _)| &act.apply(Sl2Element::Y, g) - &act.poly_action(&qs, g))
        .collect();

    // rows: h constraints, then every coordinate of the y condition
    let mut rows: BTreeMap<(usize, u32), usize> = BTreeMap::new();
    for img in &y_images {
        for (coord, _) in img.coordinates() {
            let next = rows.len();
            rows.entry(coord).or_insert(next);
        }
    }
    let h_rows = solutions[0].1.len();
    let mut m = Matrix::zeros(h_rows + rows.len(), solutions.len());
    for (col, ((_, constraints), img)) in solutions.iter().zip(&y_images).enumerate() {
        for (r, c) in constraints.iter().enumerate() {
            m[(r, col)] = c.clone();
        }
        for (coord, c) in img.coordinates() {
            m[(h_rows + rows[&coord], col)] = c.clone();
        }
    }
    let kernel = m.kernel();
    match kernel.len() {
        0 => return Err(DecompositionFailure::NoGenerator { shift }),
        1 => {}
        dimension => return Err(DecompositionFailure::Ambiguous { shift, dimension }),
    }
    let mut g = TensorElement::zero(act.k());
    for ((sol, _), c) in solutions.iter().zip(&kernel[0]) {
        if !c.is_zero() {
            g = &g + &sol.scale(c);
        }
    }
    let last = g.components.iter().rev().find(|c| !c.is_zero()).expect("kernel vector is nonzero");
    let (_, c) = last.terms().next().expect("nonzero");
    let g = g.scale(&(Rational::one() / c));
    if !act.is_generator(&g, shift) {
        return Err(DecompositionFailure::NoGenerator { shift });
    }
    Ok(g)
}

/// `V(p) ⊗ L(k) = ⊕_i V(p + k - 2i)`, with generators certified up to
/// level `degree`.
pub fn decompose_tensor(p: &Polynomial, k: u32, degree: u32) -> Result<Decomposition, DecompositionFailure> {
    assert_eq!(p.nvars(), 1, "sl(2) parameters are one-variable polynomials");
    let minimum = minimum_truncation(p, k);
    if degree < minimum {
        return Err(DecompositionFailure::TruncationTooSmall { degree, minimum });
    }
    let act = tensor_representation(p, k);
    let shifts: Vec<i64> = (0..=k as i64).map(|i| k as i64 - 2 * i).collect();
    let generators = shifts
        .iter()
        .map(|&s| solve_generator(&act, s))
        .collect::<Result<Vec<_>, _>>()?;

    // X^c g for c <= degree
    let powers: Vec<Vec<TensorElement>> = generators
        .par_iter()
        .map(|g| {
            let x = Polynomial::var(1, 1).expect("x1 exists");
            let mut cur = g.clone();
            let mut out = Vec::with_capacity(degree as usize + 1);
            for _ in 0..=degree {
                let next = act.poly_action(&x, &cur);
                out.push(std::mem::replace(&mut cur, next));
            }
            out
        })
        .collect();
    let lowest: Vec<u32> = generators
        .iter()
        .map(|g| g.lowest_level().expect("generator is nonzero"))
        .collect();

    let profile: Vec<LevelRank> = (0..=degree)
        .into_par_iter()
        .map(|e| {
            let vectors: Vec<Vec<Rational>> = powers
                .iter()
                .zip(&lowest)
                .filter(|(_, &l)| l <= e)
                .map(|(pw, &l)| pw[(e - l) as usize].level_part(e))
                .collect();
            let dim = e.min(k) as usize + 1;
            if vectors.len() != dim {
                return LevelRank { level: e, rank: vectors.len().min(dim), dim };
            }
            level_rank(&vectors, e, dim)
        })
        .collect();
    if let Some(bad) = profile.iter().find(|r| r.rank != r.dim) {
        return Err(DecompositionFailure::RankDrop {
            degree: bad.level,
            rank: bad.rank,
            dim: bad.dim,
        });
    }

    Ok(Decomposition {
        p: p.clone(),
        k,
        summands: shifts
            .into_iter()
            .zip(generators)
            .map(|(shift, generator)| Summand { shift, generator })
            .collect(),
        certified_up_to_degree: degree,
    })
}
