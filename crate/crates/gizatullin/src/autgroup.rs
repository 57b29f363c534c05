//! Shape of the fibration graph, the amalgam presentation of the
//! automorphism group, birational word reduction, and the toric family.

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::configinv::{q_self_reversed, CStarPoint};
use crate::extdiv::{ExtDivError, ExtendedDivisor};
use crate::poly::Poly;
use crate::zigzag::{contracts_to, hj_expand, HJFraction, WeightedChain, ZigzagError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutError {
    #[error("fibration graph shape is unknown ({0} feathered components)")]
    UnknownShape(usize),
    #[error("toric parameters need d >= 1, 0 <= e < d and gcd(d, e) = 1; got ({d}, {e})")]
    BadToric { d: i64, e: i64 },
    #[error("toric divisor {0} does not contract to [0,0,0]")]
    ToricNotContractible(WeightedChain),
    #[error(transparent)]
    ExtDiv(#[from] ExtDivError),
    #[error(transparent)]
    Zigzag(#[from] ZigzagError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphShape {
    /// One vertex with a loop; `γ_i` per paired index.
    Loop {
        gammas: Vec<(usize, CStarPoint)>,
    },
    TwoVertices {
        reason: String,
    },
    Unknown {
        feathered: usize,
    },
}

impl GraphShape {
    pub fn name(&self) -> &'static str {
        match self {
            GraphShape::Loop { .. } => "Loop",
            GraphShape::TwoVertices { .. } => "TwoVertices",
            GraphShape::Unknown { .. } => "Unknown",
        }
    }
}

impl fmt::Display for GraphShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphShape::Loop { gammas } if !gammas.is_empty() => {
                let g: Vec<String> = gammas.iter().map(|(i, g)| format!("γ_{i} = {g}")).collect();
                write!(f, "Loop ({})", g.join(", "))
            }
            GraphShape::TwoVertices { reason } => write!(f, "TwoVertices ({reason})"),
            other => f.write_str(other.name()),
        }
    }
}

pub fn fibration_graph_shape(div: &ExtendedDivisor) -> Result<GraphShape, ExtDivError> {
    let rev = q_self_reversed(div)?;
    let n = div.n();
    if !rev.palindrome {
        return Ok(GraphShape::TwoVertices {
            reason: "boundary tail is not a palindrome".into(),
        });
    }
    if let Some(i) = (2..=n).find(|&i| div.r(i) != div.r(div.dual_index(i))) {
        return Ok(GraphShape::TwoVertices {
            reason: format!("r_{i} ≠ r_{}", div.dual_index(i)),
        });
    }
    if let Some((i, _)) = rev.gammas.iter().find(|(_, g)| g.is_none()) {
        return Ok(GraphShape::TwoVertices {
            reason: format!("A_{} is not a scaled copy of A_{i}", div.dual_index(*i)),
        });
    }
    let feathered = (2..=n).filter(|&i| div.r(i) > 0).count();
    if feathered > 2 {
        return Ok(GraphShape::Unknown { feathered });
    }
    Ok(GraphShape::Loop {
        gammas: rev
            .gammas
            .into_iter()
            .map(|(i, g)| (i, g.expect("checked above")))
            .collect(),
    })
}

fn is_exceptional_chain(chain: &WeightedChain) -> bool {
    chain.tail() == [-2, -2, -2]
}

pub fn aut_generated_by_fibrations(div: &ExtendedDivisor) -> Result<bool, AutError> {
    match fibration_graph_shape(div)? {
        GraphShape::Unknown { feathered } => Err(AutError::UnknownShape(feathered)),
        GraphShape::TwoVertices { .. } => Ok(true),
        GraphShape::Loop { .. } => Ok(is_exceptional_chain(div.chain())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub formula: &'static str,
    /// `(name, meaning)` per free factor.
    pub factors: Vec<(&'static str, &'static str)>,
    pub edge_group: &'static str,
}

pub fn presentation_for(shape: &GraphShape) -> Result<Presentation, AutError> {
    match shape {
        GraphShape::Loop { .. } => Ok(Presentation {
            formula: "A ⋆_{A∩J} J",
            factors: vec![("A", "⟨Aut(X,D), ψ⟩"), ("J", "Aut(V,π)")],
            edge_group: "A∩J = Aut(X,D)",
        }),
        GraphShape::TwoVertices { .. } => Ok(Presentation {
            formula: "J ⋆_A J^∨",
            factors: vec![("J", "Aut(V,π)"), ("J^∨", "Aut(V,π^∨)")],
            edge_group: "A = Aut(X,D)",
        }),
        GraphShape::Unknown { feathered } => Err(AutError::UnknownShape(*feathered)),
    }
}

pub fn amalgam_presentation(div: &ExtendedDivisor) -> Result<Presentation, AutError> {
    presentation_for(&fibration_graph_shape(div)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Center {
    Point(BigRational),
    /// A center known to exist but not computed.
    Formal(usize),
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Center::Point(x) => write!(f, "{}", crate::configinv::fmt_q(x)),
            Center::Formal(k) => write!(f, "λ'{k}"),
        }
    }
}

/// `(x, y) ↦ (a·x + P(y), b·y)` with `P(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FibMap {
    pub a: BigRational,
    pub b: BigRational,
    pub p: Poly,
}

impl FibMap {
    /// `self ∘ earlier`
    pub fn after(&self, earlier: &FibMap) -> FibMap {
        FibMap {
            a: &self.a * &earlier.a,
            b: &self.b * &earlier.b,
            p: &earlier.p.scale(&self.a) + &self.p.rescale_var(&earlier.b),
        }
    }

    fn is_affine(&self) -> bool {
        self.p.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BiratLetter {
    Rev(Center),
    Fib(FibMap),
}

impl fmt::Display for BiratLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BiratLetter::Rev(c) => write!(f, "Rev({c})"),
            BiratLetter::Fib(m) => write!(
                f,
                "Fib({}, {}, {})",
                crate::configinv::fmt_q(&m.a),
                crate::configinv::fmt_q(&m.b),
                m.p
            ),
        }
    }
}

/// Letters in application order: the first letter acts first.
pub type BiratWord = Vec<BiratLetter>;

/// Reduces to a fixpoint: equal reversions cancel, distinct ones merge when
/// `merge_reversions` is set, fibered maps compose, affine ones vanish.
pub fn reduce_birational_word(word: &[BiratLetter], merge_reversions: bool) -> BiratWord {
    let mut fresh = word
        .iter()
        .filter_map(|l| match l {
            BiratLetter::Rev(Center::Formal(k)) => Some(k + 1),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let mut out: BiratWord = Vec::new();
    for letter in word {
        let mut incoming = letter.clone();
        loop {
            let merged = match (out.last(), &incoming) {
                (Some(BiratLetter::Rev(c1)), BiratLetter::Rev(c2)) if c1 == c2 => Some(None),
                (Some(BiratLetter::Rev(_)), BiratLetter::Rev(_)) if merge_reversions => {
                    fresh += 1;
                    Some(Some(BiratLetter::Rev(Center::Formal(fresh - 1))))
                }
                (Some(BiratLetter::Fib(earlier)), BiratLetter::Fib(later)) => {
                    Some(Some(BiratLetter::Fib(later.after(earlier))))
                }
                _ => None,
            };
            match merged {
                None => {
                    if !matches!(&incoming, BiratLetter::Fib(m) if m.is_affine()) {
                        out.push(incoming);
                    }
                    break;
                }
                Some(None) => {
                    out.pop();
                    break;
                }
                Some(Some(next)) => {
                    out.pop();
                    incoming = next;
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricReport {
    pub d: i64,
    pub e: i64,
    pub e_prime: i64,
    /// Expansion of `d/(d-e)`; absent for `d = 1`.
    pub boundary_box: Option<HJFraction>,
    /// Expansion of `d/e`; absent for `d = 1`.
    pub feather_box: Option<HJFraction>,
    pub shape: GraphShape,
    /// Boundary followed by the feather, as one linear chain.
    pub divisor: WeightedChain,
}

pub fn modular_inverse(e: i64, d: i64) -> Option<i64> {
    let g = e.extended_gcd(&d);
    (g.gcd == 1).then(|| g.x.rem_euclid(d))
}

pub fn toric_report(d: i64, e: i64) -> Result<ToricReport, AutError> {
    if d < 1 || e < 0 || e >= d || e.gcd(&d) != 1 {
        return Err(AutError::BadToric { d, e });
    }
    let e_prime = if d == 1 {
        0
    } else {
        modular_inverse(e, d).expect("coprime")
    };
    let loop_shape = (e * e - 1).rem_euclid(d) == 0;
    let shape = if loop_shape {
        GraphShape::Loop { gammas: Vec::new() }
    } else {
        GraphShape::TwoVertices {
            reason: format!("{e}^2 ≢ 1 mod {d}"),
        }
    };
    let (boundary_box, feather_box) = if d == 1 {
        (None, None)
    } else {
        (Some(hj_expand(d, d - e)?), Some(hj_expand(d, e)?))
    };
    let mut weights = vec![0, 0];
    if let (Some(b), Some(f)) = (&boundary_box, &feather_box) {
        weights.extend(b.expansion.iter().map(|k| -k));
        weights.push(-1);
        weights.extend(f.expansion.iter().rev().map(|k| -k));
    } else {
        weights.push(0);
    }
    let divisor = WeightedChain::new(weights)?;
    let target = WeightedChain::new(vec![0, 0, 0])?;
    if !contracts_to(&divisor, &target) {
        return Err(AutError::ToricNotContractible(divisor));
    }
    Ok(ToricReport {
        d,
        e,
        e_prime,
        boundary_box,
        feather_box,
        shape,
        divisor,
    })
}
