//! Truncated bivariate power series and the lifts of triangular maps
//! through chains of blowups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::configinv::{fmt_q, CStarPoint};
use crate::extdiv::{exceptional_run, ExtDivError, ExtendedDivisor};
use crate::poly::Poly;
use crate::zigzag::{BlowupSim, CreationOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("triangular map needs a, b nonzero and P(0) = 0")]
    BadMap,
    #[error("lift along {word} is not of the expected form at order {order}")]
    Factorization { word: String, order: usize },
    #[error("components {0} and {1} have proportional scaling exponents")]
    ZeroDeterminant(usize, usize),
    #[error("point {0} is not real")]
    NonRealPoint(String),
    #[error("division by zero at s = 0 ({0})")]
    Pole(&'static str),
    #[error("bad letter {0:?} in turn word")]
    BadWord(String),
    #[error(transparent)]
    ExtDiv(#[from] ExtDivError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Turn {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TurnWord(pub Vec<Turn>);

impl fmt::Display for TurnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        for t in &self.0 {
            f.write_str(match t {
                Turn::L => "L",
                Turn::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for TurnWord {
    type Err = LiftError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" {
            return Ok(Self::default());
        }
        s.chars()
            .map(|c| match c {
                'L' => Ok(Turn::L),
                'R' => Ok(Turn::R),
                _ => Err(LiftError::BadWord(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TurnWord)
    }
}

/// Sparse series in `s, t`; terms of degree above `order` are dropped.
/// Degree is `w0·i + w1·j` for the weights, `(1, 1)` unless reweighted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries2 {
    order: usize,
    weights: (usize, usize),
    terms: BTreeMap<(usize, usize), BigRational>,
}

impl TruncatedSeries2 {
    pub fn zero(order: usize) -> Self {
        Self {
            order,
            weights: (1, 1),
            terms: BTreeMap::new(),
        }
    }

    fn empty_like(&self, order: usize) -> Self {
        Self {
            order,
            weights: self.weights,
            terms: BTreeMap::new(),
        }
    }

    fn degree(&self, i: usize, j: usize) -> usize {
        self.weights.0 * i + self.weights.1 * j
    }

    /// Same series under new degree weights, dropping terms now too heavy.
    pub fn reweight(&self, weights: (usize, usize)) -> Self {
        assert!(weights.0 >= 1 && weights.1 >= 1);
        let mut out = Self {
            order: self.order,
            weights,
            terms: BTreeMap::new(),
        };
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.add_term(0, 0, c);
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: usize, j: usize, c: BigRational) {
        if self.degree(i, j) > self.order || c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self {
            order,
            weights: self.weights,
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| self.degree(*i, *j) <= order)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.order.min(other.order));
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.empty_like(self.order);
        for (&(i, j), x) in &self.terms {
            out.add_term(i, j, x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.weights, other.weights);
        let order = self.order.min(other.order);
        let mut out = self.empty_like(order);
        for (&(i, j), x) in &self.terms {
            let d = self.degree(i, j);
            if d > order {
                continue;
            }
            for (&(p, q), y) in &other.terms {
                if d + self.degree(p, q) <= order {
                    out.add_term(i + p, j + q, x * y);
                }
            }
        }
        out
    }

    /// Inverse of a series with nonzero constant term.
    pub fn inv(&self) -> Option<Self> {
        let c = self.coeff(0, 0);
        if c.is_zero() {
            return None;
        }
        let c_inv = c.recip();
        let mut u = self.scale(&c_inv);
        u.add_term(0, 0, -BigRational::one());
        let neg_u = u.scale(&-BigRational::one());
        let mut sum = self.empty_like(self.order);
        sum.add_term(0, 0, BigRational::one());
        let mut power = sum.clone();
        loop {
            power = power.mul(&neg_u);
            if power.is_zero() {
                break;
            }
            sum = sum.add(&power);
        }
        Some(sum.scale(&c_inv))
    }

    /// Integer power; negative exponents need a unit constant term.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut result = self.empty_like(self.order);
        result.add_term(0, 0, BigRational::one());
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(result)
    }

    /// `(s, t) = (s, s·t)`: `s^i t^j ↦ s^{i+j} t^j`.
    pub fn subst_l(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (&(i, j), c) in &self.terms {
            out.add_term(i + j, j, c.clone());
        }
        out
    }

    /// `(s, t) = (s·t, t)`: `s^i t^j ↦ s^i t^{i+j}`.
    pub fn subst_r(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, i + j, c.clone());
        }
        out
    }

    /// Quotient by `s^k t^l`, if every term is divisible by it.
    pub fn div_monomial(&self, k: usize, l: usize) -> Option<Self> {
        let mut out = Self::zero(self.order.saturating_sub(k + l));
        for (&(i, j), c) in &self.terms {
            if i < k || j < l {
                return None;
            }
            out.add_term(i - k, j - l, c.clone());
        }
        Some(out)
    }

    /// `self(s_series, t_series)`; both substitutes must have zero constant term.
    pub fn compose(&self, s_series: &Self, t_series: &Self) -> Self {
        let order = self.order.min(s_series.order).min(t_series.order);
        let mut s_pows = vec![Self::one(order)];
        let mut t_pows = vec![Self::one(order)];
        let mut out = Self::zero(order);
        for (&(i, j), c) in &self.terms {
            while s_pows.len() <= i {
                let next = s_pows.last().unwrap().mul(s_series);
                s_pows.push(next);
            }
            while t_pows.len() <= j {
                let next = t_pows.last().unwrap().mul(t_series);
                t_pows.push(next);
            }
            out = out.add(&s_pows[i].mul(&t_pows[j]).scale(c));
        }
        out
    }

    /// `Σ c_{i,0} u^i`.
    pub fn at_v_zero(&self) -> Poly {
        let deg = self
            .terms
            .keys()
            .filter(|(_, j)| *j == 0)
            .map(|(i, _)| *i)
            .max();
        let Some(deg) = deg else {
            return Poly::zero();
        };
        Poly::new((0..=deg).map(|i| self.coeff(i, 0)).collect())
    }
}

impl fmt::Display for TruncatedSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.order + 1);
        }
        let mut first = true;
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by_key(|((i, j), _)| (i + j, *i));
        for (&(i, j), c) in sorted {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut m = String::new();
                    if i > 0 {
                        m.push('u');
                        if i > 1 {
                            m.push_str(&format!("^{i}"));
                        }
                    }
                    if j > 0 {
                        m.push('v');
                        if j > 1 {
                            m.push_str(&format!("^{j}"));
                        }
                    }
                    m
                }
            };
            if mono.is_empty() || !a.is_one() {
                write!(f, "{}", fmt_q(&a))?;
            }
            write!(f, "{mono}")?;
        }
        write!(f, " + O({})", self.order + 1)
    }
}

/// `ψ(x, y) = (a·x + P(y), b·y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularMap {
    a: BigRational,
    b: BigRational,
    p: Poly,
}

impl TriangularMap {
    pub fn new(a: BigRational, b: BigRational, p: Poly) -> Result<Self, LiftError> {
        if a.is_zero() || b.is_zero() || !p.coeff(0).is_zero() {
            return Err(LiftError::BadMap);
        }
        Ok(Self { a, b, p })
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn p(&self) -> &Poly {
        &self.p
    }

    /// `self ∘ earlier`
    pub fn after(&self, earlier: &Self) -> Self {
        Self {
            a: &self.a * &earlier.a,
            b: &self.b * &earlier.b,
            p: &earlier.p.scale(&self.a) + &self.p.rescale_var(&earlier.b),
        }
    }
}

/// Exponent pair `(p, q)` standing for `a^p b^q`.
pub type Monomial = (i64, i64);

pub fn monomial_value(a: &BigRational, b: &BigRational, m: Monomial) -> BigRational {
    let pw = |x: &BigRational, e: i64| {
        if e >= 0 {
            num_traits::pow(x.clone(), e as usize)
        } else {
            num_traits::pow(x.recip(), e.unsigned_abs() as usize)
        }
    };
    pw(a, m.0) * pw(b, m.1)
}

/// `(u, v) ↦ (α·u·(1 + u^k v^l R), β·v·(1 + u^k v^l S))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftForm {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub alpha_exp: Monomial,
    pub beta_exp: Monomial,
    pub k: usize,
    pub l: usize,
    pub r: TruncatedSeries2,
    pub s: TruncatedSeries2,
    /// `R(0,0) ≠ 0`: the monomial `u^k v^l` is attained.
    pub sharp: bool,
}

impl LiftForm {
    /// The two coordinate functions of the lift, to the form's order.
    pub fn components(&self) -> (TruncatedSeries2, TruncatedSeries2) {
        let order = self.r.order();
        let build = |coef: &BigRational, factor: &TruncatedSeries2, own: (usize, usize)| {
            let mut out = TruncatedSeries2::zero(order + self.k + self.l + 1);
            out.add_term(own.0, own.1, coef.clone());
            for (&(i, j), c) in factor.terms() {
                out.add_term(i + self.k + own.0, j + self.l + own.1, coef * c);
            }
            out.truncate(order)
        };
        (
            build(&self.alpha, &self.r, (1, 0)),
            build(&self.beta, &self.s, (0, 1)),
        )
    }
}

pub fn lift_word_exponents(word: &[Turn]) -> (usize, usize) {
    word.iter().fold((0, 1), |(k, l), t| match t {
        Turn::L => (k + l, l),
        Turn::R => (k, k + l),
    })
}

pub const DEFAULT_ORDER: usize = 16;

pub fn lift_word_series(
    psi: &TriangularMap,
    word: &[Turn],
    order: usize,
) -> Result<LiftForm, LiftError> {
    let (k, l) = lift_word_exponents(word);
    lift_at(psi, word, order, order + k + l)
        .or_else(|| lift_at(psi, word, order, 2 * order + k + l))
        .ok_or_else(|| LiftError::Factorization {
            word: TurnWord(word.to_vec()).to_string(),
            order,
        })
}

fn lift_at(psi: &TriangularMap, word: &[Turn], order: usize, working: usize) -> Option<LiftForm> {
    // x' = a·x·A with A = 1 + P(y)/(a·x) in the chart x = s, y = s·t.
    // Each stage is truncated by the total degree its terms reach in the final chart.
    let mut weights = vec![(1usize, 1usize); word.len() + 1];
    for (idx, turn) in word.iter().enumerate().rev() {
        let (w0, w1) = weights[idx + 1];
        weights[idx] = match turn {
            Turn::L => (w0, w0 + w1),
            Turn::R => (w0 + w1, w1),
        };
    }
    let mut a_ser = TruncatedSeries2::one(working);
    for (i, c) in psi.p.coeffs().iter().enumerate().skip(1) {
        a_ser.add_term(i - 1, i, c / &psi.a);
    }
    a_ser = a_ser.reweight(weights[0]);
    let mut b_ser = a_ser.inv()?;
    let mut alpha = psi.a.clone();
    let mut beta = &psi.b / &psi.a;
    let mut alpha_exp: Monomial = (1, 0);
    let mut beta_exp: Monomial = (-1, 1);
    for (turn, &w) in word.iter().zip(&weights[1..]) {
        match turn {
            Turn::L => {
                a_ser = a_ser.subst_l().reweight(w);
                b_ser = b_ser.subst_l().reweight(w).mul(&a_ser.inv()?);
                beta = &beta / &alpha;
                beta_exp = (beta_exp.0 - alpha_exp.0, beta_exp.1 - alpha_exp.1);
            }
            Turn::R => {
                b_ser = b_ser.subst_r().reweight(w);
                a_ser = a_ser.subst_r().reweight(w).mul(&b_ser.inv()?);
                alpha = &alpha / &beta;
                alpha_exp = (alpha_exp.0 - beta_exp.0, alpha_exp.1 - beta_exp.1);
            }
        }
    }
    let (k, l) = lift_word_exponents(word);
    let one = TruncatedSeries2::one(working);
    let r = a_ser.sub(&one).div_monomial(k, l)?.truncate(order);
    let s = b_ser.sub(&one).div_monomial(k, l)?.truncate(order);
    let sharp = !r.coeff(0, 0).is_zero();
    Some(LiftForm {
        alpha,
        beta,
        alpha_exp,
        beta_exp,
        k,
        l,
        r,
        s,
        sharp,
    })
}

/// `a^{p_i} b^{q_i}` exponents of the torus action on each component
/// coordinate, from each component's chart word.
pub fn component_scaling_exponents(words: &[Vec<Turn>]) -> Result<Vec<Monomial>, LiftError> {
    let pairs: Vec<Monomial> = words
        .iter()
        .map(|w| {
            w.iter()
                .fold(((1i64, 0i64), (-1i64, 1i64)), |(al, be), t| match t {
                    Turn::L => (al, (be.0 - al.0, be.1 - al.1)),
                    Turn::R => ((al.0 - be.0, al.1 - be.1), be),
                })
        })
        .map(|(al, _)| al)
        .collect();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if pairs[i].0 * pairs[j].1 - pairs[j].0 * pairs[i].1 == 0 {
                return Err(LiftError::ZeroDeterminant(i, j));
            }
        }
    }
    Ok(pairs)
}

/// `u ↦ scale·u + shift` on a feather coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub scale: BigRational,
    pub shift: BigRational,
}

impl AffineMap {
    pub fn apply(&self, u: &BigRational) -> BigRational {
        &self.scale * u + &self.shift
    }
}

/// Action on a feather over the base point `γ`. For `l = 1` the shift uses
/// `R(γ, 0)` truncated at the form's order.
pub fn feather_action(form: &LiftForm, gamma: &CStarPoint) -> Result<AffineMap, LiftError> {
    let scale = &form.alpha / &form.beta;
    if form.l >= 2 {
        return Ok(AffineMap {
            scale,
            shift: BigRational::zero(),
        });
    }
    let g = gamma
        .as_real()
        .ok_or_else(|| LiftError::NonRealPoint(gamma.to_string()))?;
    let g_pow = num_traits::pow(g.clone(), form.k + 1);
    let shift = &scale * g_pow * form.r.at_v_zero().eval(&g);
    Ok(AffineMap { scale, shift })
}

/// `p·a·γ`
pub fn exceptional_translation(a: &BigRational, gamma: &BigRational, p: i64) -> BigRational {
    BigRational::from_integer(p.into()) * a * gamma
}

/// Replays a creation order, recording for each final position the chart
/// word of the gap its curve was born in, followed by `R`.
pub fn chart_words(order: &CreationOrder) -> Vec<Option<Vec<Turn>>> {
    let mut sim = BlowupSim::new();
    let mut words: HashMap<usize, Vec<Turn>> = HashMap::new();
    let mut gaps: Vec<Vec<Turn>> = Vec::new();
    if order.outer {
        sim.outer_start();
        gaps.push(Vec::new());
    }
    for &g in &order.gaps {
        let path = gaps[g].clone();
        let id = sim.blow_up_gap(g);
        let mut left = path.clone();
        left.push(Turn::L);
        let mut right = path;
        right.push(Turn::R);
        words.insert(id, right.clone());
        gaps[g] = left;
        gaps.insert(g + 1, right);
    }
    sim.ids.iter().map(|id| words.get(id).cloned()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim3Row {
    pub component: usize,
    pub word: String,
    pub k: usize,
    pub l: usize,
    pub exceptional: bool,
    pub consistent: bool,
}

/// For every inner component: `l ≥ 2` exactly when it is not exceptional.
pub fn verify_claim3(div: &ExtendedDivisor) -> Result<Vec<Claim3Row>, LiftError> {
    Ok(claim3_rows(&div.pre_feather_tail())?)
}

pub fn claim3_rows(tail: &[i64]) -> Result<Vec<Claim3Row>, ExtDivError> {
    let run = exceptional_run(tail)?;
    let words = chart_words(&run.order);
    let n = tail.len() + 1;
    Ok((3..n)
        .map(|j| {
            let w = words[j - 2].clone().unwrap_or_default();
            let (k, l) = lift_word_exponents(&w);
            let exceptional = run.indices.contains(&j);
            Claim3Row {
                component: j,
                word: TurnWord(w).to_string(),
                k,
                l,
                exceptional,
                consistent: (l >= 2) == !exceptional,
            }
        })
        .collect())
}

/// Rational function `num/den` in one variable `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::constant(BigRational::one()),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::poly(Poly::constant(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            num: &(&self.num * &o.den) - &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn recip(&self) -> Result<Self, LiftError> {
        if self.num.is_zero() {
            return Err(LiftError::Pole("reciprocal of zero"));
        }
        Ok(Self {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    /// Value at `s = 0` after cancelling common powers of `s`.
    pub fn at_zero(&self) -> Result<BigRational, LiftError> {
        if self.num.is_zero() {
            return Ok(BigRational::zero());
        }
        let vn = self.num.valuation().expect("nonzero");
        let vd = self
            .den
            .valuation()
            .ok_or(LiftError::Pole("zero denominator"))?;
        if vd > vn {
            return Err(LiftError::Pole("pole at s = 0"));
        }
        if vn > vd {
            return Ok(BigRational::zero());
        }
        Ok(self.num.coeff(vn) / self.den.coeff(vd))
    }
}

/// Follows the line `y_j = a` through the coordinate changes near
/// `C_{j-1}` and returns where it meets the section, as `(w, z)` at `s = 0`.
pub fn correspondence_check(
    m: usize,
    basepoints: &[BigRational],
    a: &BigRational,
) -> Result<(BigRational, BigRational), LiftError> {
    if a.is_zero() {
        return Err(LiftError::Pole("a = 0"));
    }
    let s = Poly::monomial(BigRational::one(), 1);
    let t = RatFunc::poly(s).recip()?;
    let x_j = t.clone();
    let y_j = RatFunc::constant(a.clone());
    let mut x_prev = x_j.pow(m).mul(&y_j);
    for p in basepoints {
        x_prev = x_prev.mul(&x_j.sub(&RatFunc::constant(p.clone())));
    }
    let y_prev = x_j.recip()?;
    let w0 = x_prev.recip()?;
    let z0 = y_prev;
    let w = w0.mul(&z0.pow(m + basepoints.len()).recip()?);
    Ok((w.at_zero()?, z0.at_zero()?))
}
