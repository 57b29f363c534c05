//! Exhaustive sweeps over blowup words.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::configinv::CStarPoint;
use crate::extdiv::{
    classify_components, exceptional_components, exceptional_components_of,
    exceptional_components_of_reversed, ExtendedDivisor, Feather,
};
use crate::poly::ratio;
use crate::serieslift::{chart_words, claim3_rows, component_scaling_exponents};
use crate::zigzag::{BlowupSim, WeightedChain};

pub const MAX_BLOWUPS_BOUND: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SweepError {
    #[error("unknown property {0:?}; expected claim3, odd-n-symmetry, exceptional-invariants or determinants")]
    UnknownProperty(String),
    #[error("{0} blowups exceeds the sweep bound {MAX_BLOWUPS_BOUND}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Property {
    Claim3,
    OddNSymmetry,
    ExceptionalInvariants,
    Determinants,
}

impl FromStr for Property {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "claim3" => Ok(Property::Claim3),
            "odd-n-symmetry" => Ok(Property::OddNSymmetry),
            "exceptional-invariants" => Ok(Property::ExceptionalInvariants),
            "determinants" => Ok(Property::Determinants),
            _ => Err(SweepError::UnknownProperty(s.to_string())),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Claim3 => "claim3",
            Property::OddNSymmetry => "odd-n-symmetry",
            Property::ExceptionalInvariants => "exceptional-invariants",
            Property::Determinants => "determinants",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub property: Property,
    pub max_blowups: usize,
    /// Words using only `L`/`R` after the outer start, by length `1..=K`.
    pub turn_words_by_length: Vec<usize>,
    /// Words containing at least one jump, by length.
    pub jump_words_by_length: Vec<usize>,
    pub distinct_chains: usize,
    /// Canonical divisors satisfying condition (*).
    pub divisors: usize,
    pub checked: usize,
    pub counterexamples: usize,
    pub samples: Vec<String>,
    /// Realizable palindromic pre-feather tails with odd `n ≥ 5`, whatever
    /// their feathers.
    pub odd_palindromes: usize,
}

impl fmt::Display for SweepSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let total: usize = self.turn_words_by_length.iter().sum::<usize>()
            + self.jump_words_by_length.iter().sum::<usize>();
        writeln!(
            f,
            "property: {}; max blowups: {}",
            self.property, self.max_blowups
        )?;
        writeln!(
            f,
            "words: {total} (L/R only by length: {:?}; with jumps: {:?})",
            self.turn_words_by_length, self.jump_words_by_length
        )?;
        writeln!(
            f,
            "distinct chains: {}; condition-star divisors: {}; checked: {}",
            self.distinct_chains, self.divisors, self.checked
        )?;
        if self.property == Property::OddNSymmetry {
            writeln!(f, "odd-n palindromic chains: {}", self.odd_palindromes)?;
        }
        write!(f, "counterexamples: {}", self.counterexamples)?;
        for s in &self.samples {
            write!(f, "\n  {s}")?;
        }
        Ok(())
    }
}

struct Census {
    turn: Vec<usize>,
    jump: Vec<usize>,
    chains: BTreeSet<Vec<i64>>,
}

fn walk(sim: &BlowupSim, len: usize, max: usize, jumped: bool, census: &mut Census) {
    if jumped {
        census.jump[len - 1] += 1;
    } else {
        census.turn[len - 1] += 1;
    }
    census.chains.insert(sim.weights.clone());
    if len == max {
        return;
    }
    let tracked = sim.tracked.expect("outer start done");
    for right in [false, true] {
        let mut next = sim.clone();
        next.blow_up_gap(tracked);
        next.tracked = Some(if right { tracked + 1 } else { tracked });
        walk(&next, len + 1, max, jumped, census);
    }
    for g in 0..sim.gaps() {
        if g != tracked {
            let mut next = sim.clone();
            next.blow_up_gap(g);
            walk(&next, len + 1, max, true, census);
        }
    }
}

/// Feathers `r_i = max(0, v_i + 2)` on `C_3..C_{n-1}` at unit-modulus points
/// with angles `j/(r_i + 1)`; `None` when the ends would need feathers.
pub fn canonical_divisor(tail: &[i64]) -> Option<ExtendedDivisor> {
    if tail.len() < 3 || tail[0] > -2 || *tail.last().unwrap() > -2 {
        return None;
    }
    let mut weights = vec![0, 0];
    let mut feathers = Vec::new();
    let last = tail.len() - 1;
    for (k, &v) in tail.iter().enumerate() {
        let r = if k == 0 || k == last {
            0
        } else {
            (v + 2).max(0)
        };
        weights.push(v - r);
        for j in 0..r {
            let p = CStarPoint::new(ratio(1, 1), ratio(j, r + 1)).expect("angle below 1");
            feathers.push(Feather::irreducible(k + 2, p));
        }
    }
    let div = ExtendedDivisor::new(WeightedChain::new(weights).ok()?, feathers);
    div.require_condition_star().ok()?;
    Some(div)
}

fn check(property: Property, tail: &[i64], div: &ExtendedDivisor) -> Result<(), String> {
    match property {
        Property::Claim3 => {
            let run = crate::extdiv::exceptional_run(tail).map_err(|e| e.to_string())?;
            if run.order.replay() != tail {
                return Err(format!(
                    "witness order {:?} does not replay",
                    run.order.gaps
                ));
            }
            let rows = claim3_rows(tail).map_err(|e| e.to_string())?;
            match rows.iter().find(|r| !r.consistent) {
                Some(r) => Err(format!("C_{} word {} l = {}", r.component, r.word, r.l)),
                None => Ok(()),
            }
        }
        Property::OddNSymmetry => {
            if div.is_symmetric() && div.n() % 2 == 1 {
                Err("symmetric with odd n".into())
            } else {
                Ok(())
            }
        }
        Property::ExceptionalInvariants => {
            let e = exceptional_components_of(div).map_err(|e| e.to_string())?;
            let e_rev = exceptional_components_of_reversed(div).map_err(|e| e.to_string())?;
            if div.is_symmetric() && e != e_rev {
                return Err(format!("symmetric but 𝔈 = {e:?}, 𝔈^∨ = {e_rev:?}"));
            }
            let mut twice = tail.to_vec();
            twice.reverse();
            twice.reverse();
            if exceptional_components(&twice).map_err(|e| e.to_string())? != e {
                return Err("double reversal changed 𝔈".into());
            }
            let types = classify_components(div);
            let mirrored = mirror(div);
            let mirrored_types = classify_components(&mirrored);
            for i in 2..=div.n() {
                if types.get(i) != mirrored_types.get(div.dual_index(i)) {
                    return Err(format!("type of C_{i} changes under reversal"));
                }
            }
            Ok(())
        }
        Property::Determinants => {
            let run = crate::extdiv::exceptional_run(tail).map_err(|e| e.to_string())?;
            let words: Vec<_> = chart_words(&run.order).into_iter().flatten().collect();
            component_scaling_exponents(&words)
                .map(|_| ())
                .map_err(|e| e.to_string())
        }
    }
}

/// Reversed weights with every feather moved to the dual index.
fn mirror(div: &ExtendedDivisor) -> ExtendedDivisor {
    let w = div.chain().weights();
    let mut weights = w[..2].to_vec();
    weights.extend(w[2..].iter().rev());
    let feathers = div
        .feathers()
        .iter()
        .map(|f| Feather {
            component: div.dual_index(f.component),
            mother: f.mother.map(|m| div.dual_index(m)),
            ..f.clone()
        })
        .collect();
    ExtendedDivisor::new(WeightedChain::new(weights).expect("nonempty"), feathers)
}

pub fn enumerate_sweep(max_blowups: usize, property: Property) -> Result<SweepSummary, SweepError> {
    if max_blowups > MAX_BLOWUPS_BOUND {
        return Err(SweepError::TooLarge(max_blowups));
    }
    let mut census = Census {
        turn: vec![0; max_blowups],
        jump: vec![0; max_blowups],
        chains: BTreeSet::new(),
    };
    if max_blowups > 0 {
        let mut sim = BlowupSim::new();
        sim.outer_start();
        walk(&sim, 1, max_blowups, false, &mut census);
    }
    let tails: Vec<Vec<i64>> = census.chains.iter().cloned().collect();
    let workers = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(16);
    let chunk = tails.len().div_ceil(workers).max(1);
    let partials: Vec<(usize, usize, usize, usize, Vec<String>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = tails
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    let (mut divisors, mut checked, mut bad, mut odd) = (0, 0, 0, 0);
                    let mut samples = Vec::new();
                    for tail in part {
                        let n = tail.len() + 1;
                        if n % 2 == 1 && n >= 5 && tail.iter().eq(tail.iter().rev()) {
                            odd += 1;
                        }
                        let Some(div) = canonical_divisor(tail) else {
                            continue;
                        };
                        divisors += 1;
                        checked += 1;
                        if let Err(msg) = check(property, tail, &div) {
                            bad += 1;
                            samples.push(format!("{tail:?}: {msg}"));
                        }
                    }
                    (divisors, checked, bad, odd, samples)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker"))
            .collect()
    });
    let mut summary = SweepSummary {
        property,
        max_blowups,
        turn_words_by_length: census.turn,
        jump_words_by_length: census.jump,
        distinct_chains: tails.len(),
        divisors: 0,
        checked: 0,
        counterexamples: 0,
        samples: Vec::new(),
        odd_palindromes: 0,
    };
    for (d, c, b, o, s) in partials {
        summary.divisors += d;
        summary.checked += c;
        summary.counterexamples += b;
        summary.odd_palindromes += o;
        summary.samples.extend(s);
    }
    summary.samples.sort();
    summary.samples.truncate(5);
    Ok(summary)
}
