//! Exact points of ℂ*, their roots-of-unity stabilizers, and configuration
//! classes modulo ℂ* (inner components) or Aut(𝔸¹) (outer components).

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::extdiv::{ExtDivError, ExtendedDivisor};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointError {
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(String),
    #[error("angle must lie in [0,1), got {0}")]
    AngleOutOfRange(String),
    #[error("duplicate point {0}")]
    Duplicate(String),
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

pub fn fmt_q(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `modulus * exp(2πi * angle)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CStarPoint {
    modulus: BigRational,
    angle: BigRational,
}

impl CStarPoint {
    pub fn new(modulus: BigRational, angle: BigRational) -> Result<Self, PointError> {
        if !modulus.is_positive() {
            return Err(PointError::NonPositiveModulus(fmt_q(&modulus)));
        }
        if angle.is_negative() || angle >= BigRational::one() {
            return Err(PointError::AngleOutOfRange(fmt_q(&angle)));
        }
        Ok(Self { modulus, angle })
    }

    /// Like `new` but reduces the angle mod 1.
    pub fn polar(modulus: BigRational, angle: BigRational) -> Result<Self, PointError> {
        Self::new(modulus, frac(&angle))
    }

    pub fn one() -> Self {
        Self {
            modulus: BigRational::one(),
            angle: BigRational::zero(),
        }
    }

    pub fn from_real(x: &BigRational) -> Option<Self> {
        if x.is_zero() {
            return None;
        }
        let angle = if x.is_negative() {
            BigRational::new(1.into(), 2.into())
        } else {
            BigRational::zero()
        };
        Some(Self {
            modulus: x.abs(),
            angle,
        })
    }

    pub fn root_of_unity(k: i64, order: i64) -> Self {
        Self {
            modulus: BigRational::one(),
            angle: frac(&BigRational::new(k.into(), order.into())),
        }
    }

    pub fn modulus(&self) -> &BigRational {
        &self.modulus
    }

    pub fn angle(&self) -> &BigRational {
        &self.angle
    }

    pub fn as_real(&self) -> Option<BigRational> {
        if self.angle.is_zero() {
            Some(self.modulus.clone())
        } else if self.angle == BigRational::new(1.into(), 2.into()) {
            Some(-self.modulus.clone())
        } else {
            None
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            modulus: &self.modulus * &other.modulus,
            angle: frac(&(&self.angle + &other.angle)),
        }
    }

    pub fn inv(&self) -> Self {
        Self {
            modulus: self.modulus.recip(),
            angle: frac(&-self.angle.clone()),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let e = k.unsigned_abs();
        Self {
            modulus: num_traits::pow(base.modulus, e as usize),
            angle: frac(&(base.angle * BigRational::from_integer(e.into()))),
        }
    }

    pub fn is_one(&self) -> bool {
        self.modulus.is_one() && self.angle.is_zero()
    }
}

impl fmt::Display for CStarPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_real() {
            Some(x) => write!(f, "{}", fmt_q(&x)),
            None => write!(f, "{}@{}", fmt_q(&self.modulus), fmt_q(&self.angle)),
        }
    }
}

impl Serialize for CStarPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet {
    points: BTreeSet<CStarPoint>,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rejects repeated points.
    pub fn from_points(points: impl IntoIterator<Item = CStarPoint>) -> Result<Self, PointError> {
        let mut set = BTreeSet::new();
        for p in points {
            let shown = p.to_string();
            if !set.insert(p) {
                return Err(PointError::Duplicate(shown));
            }
        }
        Ok(Self { points: set })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &CStarPoint) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &CStarPoint> {
        self.points.iter()
    }

    pub fn insert(&mut self, p: CStarPoint) -> bool {
        self.points.insert(p)
    }
}

impl FromIterator<CStarPoint> for PointSet {
    fn from_iter<I: IntoIterator<Item = CStarPoint>>(iter: I) -> Self {
        Self {
            points: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

pub fn scale_set(alpha: &CStarPoint, set: &PointSet) -> PointSet {
    set.iter().map(|p| alpha.mul(p)).collect()
}

/// `G(A)`, its order `d` (0 for the empty set, standing for all of ℂ*),
/// the orbit count `m`, and the orbits sorted by least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryData {
    pub d: usize,
    pub m: usize,
    pub group: Vec<CStarPoint>,
    pub orbits: Vec<PointSet>,
}

pub fn symmetry_group(set: &PointSet) -> SymmetryData {
    let Some(first) = set.iter().next() else {
        return SymmetryData {
            d: 0,
            m: 0,
            group: Vec::new(),
            orbits: Vec::new(),
        };
    };
    let group: Vec<CStarPoint> = set
        .iter()
        .map(|a| a.div(first))
        .filter(|alpha| scale_set(alpha, set) == *set)
        .collect();
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in set.iter() {
        if seen.contains(p) {
            continue;
        }
        let orbit: PointSet = group.iter().map(|g| g.mul(p)).collect();
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    SymmetryData {
        d: group.len(),
        m: orbits.len(),
        group,
        orbits,
    }
}

/// Coset view `A = ⋃ c_j W_{m_j}` read off the orbits: one representative
/// and the orbit size per orbit.
pub fn coset_view(set: &PointSet) -> Vec<(CStarPoint, usize)> {
    symmetry_group(set)
        .orbits
        .iter()
        .map(|o| (o.iter().next().expect("nonempty orbit").clone(), o.len()))
        .collect()
}

/// Some `α` with `α·A = B`.
pub fn star_class_equal(a: &PointSet, b: &PointSet) -> Option<CStarPoint> {
    common_scaling(&[(a.clone(), b.clone())])
}

/// One `α` with `α·A_k = B_k` for every pair at once.
pub fn common_scaling(pairs: &[(PointSet, PointSet)]) -> Option<CStarPoint> {
    if pairs.iter().any(|(a, b)| a.len() != b.len()) {
        return None;
    }
    let Some((a, b)) = pairs.iter().find(|(a, _)| !a.is_empty()) else {
        return Some(CStarPoint::one());
    };
    let a0 = a.iter().next().expect("nonempty");
    b.iter()
        .map(|b0| b0.div(a0))
        .find(|alpha| pairs.iter().all(|(x, y)| scale_set(alpha, x) == *y))
}

/// A point of 𝔸¹ with rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePoint {
    pub re: BigRational,
    pub im: BigRational,
}

impl AffinePoint {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self {
            re,
            im: BigRational::zero(),
        }
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn div(&self, o: &Self) -> Self {
        let norm = &o.re * &o.re + &o.im * &o.im;
        Self::new(
            (&self.re * &o.re + &self.im * &o.im) / &norm,
            (&self.im * &o.re - &self.re * &o.im) / norm,
        )
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Whether `B = a·A + b` for some `a ≠ 0`, `b`.
pub fn plus_class_equal(a: &BTreeSet<AffinePoint>, b: &BTreeSet<AffinePoint>) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.len() <= 1 {
        return true;
    }
    let mut it = a.iter();
    let (a0, a1) = (it.next().unwrap(), it.next().unwrap());
    let da = a1.sub(a0);
    for b0 in b {
        for b1 in b {
            if b0 == b1 {
                continue;
            }
            let scale = b1.sub(b0).div(&da);
            if scale.is_zero() {
                continue;
            }
            let shift = b0.sub(&scale.mul(a0));
            let image: BTreeSet<AffinePoint> = a.iter().map(|p| scale.mul(p).add(&shift)).collect();
            if image == *b {
                return true;
            }
        }
    }
    false
}

/// Outcome of comparing the configuration invariant with that of the
/// reversed completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfReversal {
    pub palindrome: bool,
    pub counts_match: bool,
    /// `(i, γ_i)` for each paired index `i ≤ i^∨` carrying feathers.
    pub gammas: Vec<(usize, Option<CStarPoint>)>,
    pub equal: bool,
}

pub fn q_self_reversed(div: &ExtendedDivisor) -> Result<SelfReversal, ExtDivError> {
    div.require_condition_star()?;
    let n = div.n();
    let tail = div.chain().tail();
    let palindrome = tail.iter().eq(tail.iter().rev());
    let counts_match = (2..=n).all(|i| div.r(i) == div.r(div.dual_index(i)));
    let mut gammas = Vec::new();
    if palindrome && counts_match {
        for i in 2..=n {
            let j = div.dual_index(i);
            if j < i || div.r(i) == 0 {
                continue;
            }
            gammas.push((i, class_witness(div, i, j)));
        }
    }
    let equal = palindrome && counts_match && gammas.iter().all(|(_, g)| g.is_some());
    Ok(SelfReversal {
        palindrome,
        counts_match,
        gammas,
        equal,
    })
}

/// `γ` with `A_{j,s} = γ·A_{i,s}` for every tail length `s`.
pub(crate) fn class_witness(div: &ExtendedDivisor, i: usize, j: usize) -> Option<CStarPoint> {
    if i == j {
        return Some(CStarPoint::one());
    }
    let left = div.points_by_tail_len(i);
    let right = div.points_by_tail_len(j);
    let lengths: BTreeSet<usize> = left.keys().chain(right.keys()).copied().collect();
    let pairs: Vec<(PointSet, PointSet)> = lengths
        .into_iter()
        .map(|s| {
            (
                left.get(&s).cloned().unwrap_or_default(),
                right.get(&s).cloned().unwrap_or_default(),
            )
        })
        .collect();
    common_scaling(&pairs)
}

/// Orbit numbering shared by `i` and `i^∨`: orbits of `A_i` are ordered by
/// their least element after scaling by `γ`, and orbit `j` of `A_{i^∨}` is
/// the `γ`-image of orbit `j` of `A_i`.
pub fn paired_orbits(a: &PointSet, gamma: &CStarPoint) -> Vec<(PointSet, PointSet)> {
    let mut out: Vec<(PointSet, PointSet)> = symmetry_group(a)
        .orbits
        .into_iter()
        .map(|o| {
            let image = scale_set(gamma, &o);
            (o, image)
        })
        .collect();
    out.sort_by(|x, y| x.1.cmp(&y.1));
    out
}

/// Greatest common divisor of orbit sizes, which orbit counting over cosets predicts.
pub fn gcd_of_coset_sizes(set: &PointSet) -> usize {
    coset_view(set)
        .iter()
        .fold(0usize, |acc, (_, k)| acc.gcd(k))
}
