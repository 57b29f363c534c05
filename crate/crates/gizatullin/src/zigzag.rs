//! Weighted linear chains: elementary moves, standard forms, reversion,
//! blowup words and Hirzebruch-Jung expansions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZigzagError {
    #[error("a chain needs at least one vertex")]
    Empty,
    #[error("vertex {index} has weight {weight}, expected 0")]
    NonZeroWeight { index: usize, weight: i64 },
    #[error("vertex {index} out of range for a chain of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vertex {0} has no neighbours")]
    IsolatedVertex(usize),
    #[error("chain {0} is neither standard nor 1-standard")]
    NotStandard(WeightedChain),
    #[error(
        "no standard form within depth {depth} ({explored} chains explored); frontier: {}",
        list_chains(.frontier)
    )]
    Irreducible {
        depth: usize,
        explored: usize,
        frontier: Vec<WeightedChain>,
    },
    #[error("malformed blowup word: {0}")]
    MalformedWord(String),
    #[error("{num}/{den}: need coprime integers with num > den >= 1")]
    BadFraction { num: i64, den: i64 },
    #[error("cannot parse chain {0:?}")]
    Parse(String),
}

fn list_chains(chains: &[WeightedChain]) -> String {
    chains
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Self-intersection numbers of a zigzag, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedChain {
    weights: Vec<i64>,
}

impl WeightedChain {
    pub fn new(weights: Vec<i64>) -> Result<Self, ZigzagError> {
        if weights.is_empty() {
            return Err(ZigzagError::Empty);
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<i64> {
        self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weights from index 2 on.
    pub fn tail(&self) -> &[i64] {
        &self.weights[self.weights.len().min(2)..]
    }

    /// Index of the last vertex.
    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn is_standard(&self) -> bool {
        let w = &self.weights;
        if w.len() <= 3 && w.iter().all(|&x| x == 0) {
            return true;
        }
        w.len() >= 2 && w[0] == 0 && w[1] == 0 && w[2..].iter().all(|&x| x <= -2)
    }

    /// `[0, -m, w2, ..]` with every tail weight at most -2.
    pub fn is_m_standard(&self, m: i64) -> bool {
        let w = &self.weights;
        w.len() >= 2 && w[0] == 0 && w[1] == -m && w[2..].iter().all(|&x| x <= -2)
    }
}

impl fmt::Display for WeightedChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for WeightedChain {
    type Err = ZigzagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let weights = body
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ZigzagError::Parse(s.to_string()))?;
        WeightedChain::new(weights)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Left,
    Right,
}

/// Shift at a weight-zero vertex. `Left` lowers the left neighbour and
/// raises the right one, `Right` does the opposite. At an end vertex only
/// the single neighbour changes.
pub fn elementary_shift(
    chain: &WeightedChain,
    vertex: usize,
    direction: Direction,
) -> Result<WeightedChain, ZigzagError> {
    let w = chain.weights();
    if vertex >= w.len() {
        return Err(ZigzagError::IndexOutOfRange {
            index: vertex,
            len: w.len(),
        });
    }
    if w[vertex] != 0 {
        return Err(ZigzagError::NonZeroWeight {
            index: vertex,
            weight: w[vertex],
        });
    }
    if w.len() == 1 {
        return Err(ZigzagError::IsolatedVertex(vertex));
    }
    let (left, right) = match direction {
        Direction::Left => (-1, 1),
        Direction::Right => (1, -1),
    };
    let mut out = w.to_vec();
    if vertex > 0 {
        out[vertex - 1] += left;
    }
    if vertex + 1 < out.len() {
        out[vertex + 1] += right;
    }
    Ok(WeightedChain { weights: out })
}

/// Contract a (-1)-vertex; its neighbours gain one and become adjacent.
pub fn blow_down(chain: &WeightedChain, vertex: usize) -> Result<WeightedChain, ZigzagError> {
    let w = chain.weights();
    if vertex >= w.len() {
        return Err(ZigzagError::IndexOutOfRange {
            index: vertex,
            len: w.len(),
        });
    }
    if w[vertex] != -1 {
        return Err(ZigzagError::NonZeroWeight {
            index: vertex,
            weight: w[vertex],
        });
    }
    if w.len() == 1 {
        return Err(ZigzagError::IsolatedVertex(vertex));
    }
    let mut out = w.to_vec();
    if vertex > 0 {
        out[vertex - 1] += 1;
    }
    if vertex + 1 < out.len() {
        out[vertex + 1] += 1;
    }
    out.remove(vertex);
    Ok(WeightedChain { weights: out })
}

/// Whether some sequence of blowdowns turns `chain` into `target`.
pub fn contracts_to(chain: &WeightedChain, target: &WeightedChain) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![chain.clone()];
    while let Some(c) = stack.pop() {
        if &c == target {
            return true;
        }
        if c.len() <= target.len() || !seen.insert(c.clone()) {
            continue;
        }
        for (v, &w) in c.weights().iter().enumerate() {
            if w == -1 {
                if let Ok(next) = blow_down(&c, v) {
                    stack.push(next);
                }
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Shift { vertex: usize, direction: Direction },
    Blowdown { vertex: usize },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Shift {
                vertex,
                direction: Direction::Left,
            } => write!(f, "shift-left@{vertex}"),
            Move::Shift {
                vertex,
                direction: Direction::Right,
            } => write!(f, "shift-right@{vertex}"),
            Move::Blowdown { vertex } => write!(f, "blowdown@{vertex}"),
        }
    }
}

pub fn apply_move(chain: &WeightedChain, mv: Move) -> Result<WeightedChain, ZigzagError> {
    match mv {
        Move::Shift { vertex, direction } => elementary_shift(chain, vertex, direction),
        Move::Blowdown { vertex } => blow_down(chain, vertex),
    }
}

fn legal_moves(chain: &WeightedChain) -> Vec<Move> {
    let w = chain.weights();
    let mut moves = Vec::new();
    if w.len() < 2 {
        return moves;
    }
    for (vertex, &x) in w.iter().enumerate() {
        if x == 0 {
            moves.push(Move::Shift {
                vertex,
                direction: Direction::Left,
            });
            moves.push(Move::Shift {
                vertex,
                direction: Direction::Right,
            });
        } else if x == -1 {
            moves.push(Move::Blowdown { vertex });
        }
    }
    moves
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_depth: usize,
    pub max_states: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            max_depth: 64,
            max_states: 250_000,
        }
    }
}

pub fn standardize(chain: &WeightedChain) -> Result<(WeightedChain, Vec<Move>), ZigzagError> {
    standardize_with(chain, SearchBounds::default())
}

/// Breadth-first search over shifts and blowdowns; the first standard
/// chain reached wins, so the log is a shortest one.
pub fn standardize_with(
    chain: &WeightedChain,
    bounds: SearchBounds,
) -> Result<(WeightedChain, Vec<Move>), ZigzagError> {
    if chain.is_standard() {
        return Ok((chain.clone(), Vec::new()));
    }
    let mut parent: HashMap<WeightedChain, (WeightedChain, Move)> = HashMap::new();
    let mut layer = vec![chain.clone()];
    let mut explored = 1usize;
    for depth in 1..=bounds.max_depth {
        let mut next = Vec::new();
        for state in &layer {
            for mv in legal_moves(state) {
                let Ok(child) = apply_move(state, mv) else {
                    continue;
                };
                if &child == chain || parent.contains_key(&child) {
                    continue;
                }
                parent.insert(child.clone(), (state.clone(), mv));
                explored += 1;
                if child.is_standard() {
                    let mut log = Vec::new();
                    let mut cur = child.clone();
                    while let Some((prev, mv)) = parent.get(&cur) {
                        log.push(*mv);
                        cur = prev.clone();
                    }
                    log.reverse();
                    return Ok((child, log));
                }
                next.push(child);
            }
        }
        if next.is_empty() || explored > bounds.max_states {
            let mut frontier = if next.is_empty() { layer } else { next };
            frontier.sort();
            frontier.truncate(8);
            return Err(ZigzagError::Irreducible {
                depth,
                explored,
                frontier,
            });
        }
        layer = next;
    }
    let mut frontier = layer;
    frontier.sort();
    frontier.truncate(8);
    Err(ZigzagError::Irreducible {
        depth: bounds.max_depth,
        explored,
        frontier,
    })
}

pub fn reverse_chain(chain: &WeightedChain) -> Result<WeightedChain, ZigzagError> {
    if !(chain.is_standard() || chain.is_m_standard(1)) {
        return Err(ZigzagError::NotStandard(chain.clone()));
    }
    let w = chain.weights();
    if w.len() <= 2 {
        return Ok(chain.clone());
    }
    let mut out = w[..2].to_vec();
    out.extend(w[2..].iter().rev());
    Ok(WeightedChain { weights: out })
}

pub fn is_palindrome_tail(chain: &WeightedChain) -> bool {
    let t = chain.tail();
    t.iter().eq(t.iter().rev())
}

/// One blowup. `L` and `R` blow up the tracked point and then track the
/// new curve's intersection with its left or right neighbour; `Jump(g)`
/// blows up gap `g` instead and leaves the tracked point alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    OuterStart,
    L,
    R,
    Jump(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BlowupWord(pub Vec<Letter>);

impl BlowupWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BlowupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for letter in &self.0 {
            match letter {
                Letter::OuterStart => write!(f, "O")?,
                Letter::L => write!(f, "L")?,
                Letter::R => write!(f, "R")?,
                Letter::Jump(g) => write!(f, "J{g}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for BlowupWord {
    type Err = ZigzagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "-" {
            return Ok(BlowupWord::default());
        }
        let bytes = s.as_bytes();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            match bytes[i] {
                b'O' => letters.push(Letter::OuterStart),
                b'L' => letters.push(Letter::L),
                b'R' => letters.push(Letter::R),
                b'J' => {
                    let start = i + 1;
                    let mut end = start;
                    while end < bytes.len() && bytes[end].is_ascii_digit() {
                        end += 1;
                    }
                    let gap = s[start..end]
                        .parse()
                        .map_err(|_| ZigzagError::MalformedWord(s.to_string()))?;
                    letters.push(Letter::Jump(gap));
                    i = end;
                    continue;
                }
                _ => return Err(ZigzagError::MalformedWord(s.to_string())),
            }
            i += 1;
        }
        Ok(BlowupWord(letters))
    }
}

/// Replays blowups starting from the single curve `C_2` (id 0).
#[derive(Debug, Clone)]
pub(crate) struct BlowupSim {
    pub weights: Vec<i64>,
    pub ids: Vec<usize>,
    pub tracked: Option<usize>,
    next_id: usize,
}

impl BlowupSim {
    pub fn new() -> Self {
        Self {
            weights: vec![0],
            ids: vec![0],
            tracked: None,
            next_id: 1,
        }
    }

    pub fn outer_start(&mut self) {
        self.weights = vec![-1, -1];
        self.ids = vec![0, self.next_id];
        self.next_id += 1;
        self.tracked = Some(0);
    }

    /// Blows up gap `g`, returning the id of the new curve.
    pub fn blow_up_gap(&mut self, g: usize) -> usize {
        self.weights[g] -= 1;
        self.weights[g + 1] -= 1;
        self.weights.insert(g + 1, -1);
        let id = self.next_id;
        self.next_id += 1;
        self.ids.insert(g + 1, id);
        if let Some(t) = self.tracked {
            if t > g {
                self.tracked = Some(t + 1);
            }
        }
        id
    }

    pub fn gaps(&self) -> usize {
        self.weights.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedChain {
    /// Weights of `C_2 .. C_n`.
    pub chain: WeightedChain,
    /// Step that created each position; 0 for `C_2`, 1 for the outer start.
    pub created_by: Vec<usize>,
}

pub fn generate_chain(word: &BlowupWord) -> Result<GeneratedChain, ZigzagError> {
    let mut sim = BlowupSim::new();
    for (i, &letter) in word.0.iter().enumerate() {
        match letter {
            Letter::OuterStart if i == 0 => sim.outer_start(),
            Letter::OuterStart => {
                return Err(ZigzagError::MalformedWord(format!(
                    "{word}: outer start at position {i}"
                )))
            }
            _ if i == 0 => {
                return Err(ZigzagError::MalformedWord(format!(
                    "{word}: must begin with an outer start"
                )))
            }
            Letter::L | Letter::R => {
                let g = sim.tracked.expect("tracked after outer start");
                sim.blow_up_gap(g);
                sim.tracked = Some(if letter == Letter::L { g } else { g + 1 });
            }
            Letter::Jump(g) => {
                if g >= sim.gaps() || Some(g) == sim.tracked {
                    return Err(ZigzagError::MalformedWord(format!(
                        "{word}: jump to gap {g} at position {i}"
                    )));
                }
                sim.blow_up_gap(g);
            }
        }
    }
    Ok(GeneratedChain {
        chain: WeightedChain::new(sim.weights)?,
        created_by: sim.ids,
    })
}

/// A history of blowups: optionally the outer start, then the gap index of
/// every inner blowup in forward order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CreationOrder {
    pub outer: bool,
    pub gaps: Vec<usize>,
}

impl CreationOrder {
    /// Weights of `C_2 .. C_n` after running the history from `[0]`.
    pub fn replay(&self) -> Vec<i64> {
        let mut sim = BlowupSim::new();
        if self.outer {
            sim.outer_start();
        }
        for &g in &self.gaps {
            sim.blow_up_gap(g);
        }
        sim.weights
    }
}

/// All histories producing `tail` by inner blowups after one outer start.
pub fn creation_orders(tail: &[i64]) -> Vec<CreationOrder> {
    let mut out = Vec::new();
    let mut w = tail.to_vec();
    let mut acc = Vec::new();
    contract_all(&mut w, &mut acc, &mut out, false);
    out
}

/// First history found, if any.
pub fn first_creation_order(tail: &[i64]) -> Option<CreationOrder> {
    let mut out = Vec::new();
    let mut w = tail.to_vec();
    let mut acc = Vec::new();
    contract_all(&mut w, &mut acc, &mut out, true);
    out.pop()
}

fn contract_all(
    w: &mut Vec<i64>,
    acc: &mut Vec<usize>,
    out: &mut Vec<CreationOrder>,
    first_only: bool,
) {
    if first_only && !out.is_empty() {
        return;
    }
    match w.len() {
        0 => {}
        1 => {
            if w[0] == 0 && acc.is_empty() {
                out.push(CreationOrder {
                    outer: false,
                    gaps: Vec::new(),
                });
            }
        }
        2 => {
            if w[0] == -1 && w[1] == -1 {
                out.push(CreationOrder {
                    outer: true,
                    gaps: acc.iter().rev().copied().collect(),
                });
            }
        }
        len => {
            for p in 1..len - 1 {
                if w[p] != -1 {
                    continue;
                }
                w[p - 1] += 1;
                w[p + 1] += 1;
                w.remove(p);
                acc.push(p - 1);
                contract_all(w, acc, out, first_only);
                acc.pop();
                w.insert(p, -1);
                w[p - 1] -= 1;
                w[p + 1] -= 1;
            }
        }
    }
}

/// Every word whose replay gives `tail`. Ordered, so output is stable.
pub fn recover_words(tail: &[i64]) -> BTreeSet<BlowupWord> {
    let mut out = BTreeSet::new();
    for order in creation_orders(tail) {
        if !order.outer {
            out.insert(BlowupWord::default());
            continue;
        }
        let mut letters = vec![Letter::OuterStart];
        words_for_order(&order.gaps, 0, 0, &mut letters, &mut out);
    }
    out
}

fn words_for_order(
    gaps: &[usize],
    i: usize,
    tracked: usize,
    letters: &mut Vec<Letter>,
    out: &mut BTreeSet<BlowupWord>,
) {
    if i == gaps.len() {
        out.insert(BlowupWord(letters.clone()));
        return;
    }
    let g = gaps[i];
    if g == tracked {
        for (letter, next) in [(Letter::L, g), (Letter::R, g + 1)] {
            letters.push(letter);
            words_for_order(gaps, i + 1, next, letters, out);
            letters.pop();
        }
    } else {
        let next = if tracked > g { tracked + 1 } else { tracked };
        letters.push(Letter::Jump(g));
        words_for_order(gaps, i + 1, next, letters, out);
        letters.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HJFraction {
    pub numerator: i64,
    pub denominator: i64,
    pub expansion: Vec<i64>,
}

/// `p/q = k1 - 1/(k2 - 1/(...))` with every `k >= 2`.
pub fn hj_expand(num: i64, den: i64) -> Result<HJFraction, ZigzagError> {
    if !(den >= 1 && num > den && num.gcd(&den) == 1) {
        return Err(ZigzagError::BadFraction { num, den });
    }
    let mut expansion = Vec::new();
    let (mut p, mut q) = (num, den);
    while q != 0 {
        let k = Integer::div_ceil(&p, &q);
        expansion.push(k);
        (p, q) = (q, k * q - p);
    }
    Ok(HJFraction {
        numerator: num,
        denominator: den,
        expansion,
    })
}

/// Value of a continued fraction; `None` on an empty list or a zero
/// intermediate denominator.
pub fn hj_value(expansion: &[i64]) -> Option<BigRational> {
    let (&last, rest) = expansion.split_last()?;
    let mut acc = BigRational::from_integer(BigInt::from(last));
    for &k in rest.iter().rev() {
        if acc.is_zero() {
            return None;
        }
        acc = BigRational::from_integer(BigInt::from(k)) - BigRational::one() / acc;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(w: &[i64]) -> WeightedChain {
        WeightedChain::new(w.to_vec()).unwrap()
    }

    fn word(s: &str) -> BlowupWord {
        s.parse().unwrap()
    }

    #[test]
    fn shift_moves_zero_pair_left() {
        let c = ch(&[0, 0, -2, -3]);
        let once = elementary_shift(&c, 1, Direction::Left).unwrap();
        assert_eq!(once, ch(&[-1, 0, -1, -3]));
        let twice = elementary_shift(&once, 1, Direction::Left).unwrap();
        assert_eq!(twice, ch(&[-2, 0, 0, -3]));
    }

    #[test]
    fn shift_at_end_vertex_touches_one_neighbour() {
        let c = ch(&[0, 0]);
        assert_eq!(
            elementary_shift(&c, 0, Direction::Right).unwrap(),
            ch(&[0, -1])
        );
        assert_eq!(
            elementary_shift(&ch(&[0, -1, -2, -3]), 0, Direction::Left).unwrap(),
            ch(&[0, 0, -2, -3])
        );
    }

    #[test]
    fn shift_errors() {
        let c = ch(&[0, -2, -3]);
        assert_eq!(
            elementary_shift(&c, 1, Direction::Left),
            Err(ZigzagError::NonZeroWeight {
                index: 1,
                weight: -2
            })
        );
        assert!(matches!(
            elementary_shift(&c, 7, Direction::Left),
            Err(ZigzagError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn standardize_examples() {
        let (c, log) = standardize(&ch(&[0, 0, -2, -3])).unwrap();
        assert_eq!(c, ch(&[0, 0, -2, -3]));
        assert!(log.is_empty());

        let (c, log) = standardize(&ch(&[-2, 0, 0, -3])).unwrap();
        assert_eq!(c, ch(&[0, 0, -2, -3]));
        assert_eq!(log.len(), 2);

        let (c, log) = standardize(&ch(&[0, -1, -2, -3])).unwrap();
        assert_eq!(c, ch(&[0, 0, -2, -3]));
        assert_eq!(log.len(), 1);
    }

    #[test]
    fn standardize_log_replays() {
        let start = ch(&[-1, 0, -1, -4, -2]);
        let (c, log) = standardize(&start).unwrap();
        let mut cur = start;
        for mv in log {
            cur = apply_move(&cur, mv).unwrap();
        }
        assert_eq!(cur, c);
        assert!(c.is_standard());
    }

    #[test]
    fn standardize_reports_frontier() {
        let bounds = SearchBounds {
            max_depth: 3,
            max_states: 1000,
        };
        match standardize_with(&ch(&[1, -5, -5]), bounds) {
            Err(ZigzagError::Irreducible { .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn reversion() {
        assert_eq!(
            reverse_chain(&ch(&[0, -1, -2, -3])).unwrap(),
            ch(&[0, -1, -3, -2])
        );
        assert_eq!(
            reverse_chain(&ch(&[0, -1, -2, -2])).unwrap(),
            ch(&[0, -1, -2, -2])
        );
        let c = ch(&[0, 0, -3, -2, -4, -2, -3]);
        assert_eq!(reverse_chain(&reverse_chain(&c).unwrap()).unwrap(), c);
        assert!(reverse_chain(&ch(&[0, -2, -2])).is_err());
    }

    #[test]
    fn palindromes() {
        assert!(is_palindrome_tail(&ch(&[0, 0, -2, -3, -2])));
        assert!(is_palindrome_tail(&ch(&[0, 0, -2, -3, -3, -2])));
        assert!(!is_palindrome_tail(&ch(&[0, 0, -2, -3, -4])));
    }

    #[test]
    fn generate_examples() {
        assert_eq!(generate_chain(&word("O")).unwrap().chain, ch(&[-1, -1]));
        let g = generate_chain(&word("ORR")).unwrap();
        assert_eq!(g.chain, ch(&[-2, -2, -1, -3]));
        assert_eq!(g.created_by, vec![0, 2, 3, 1]);
        assert_eq!(generate_chain(&word("-")).unwrap().chain, ch(&[0]));
        assert_eq!(
            generate_chain(&word("ORRJ0")).unwrap().chain,
            ch(&[-3, -1, -3, -1, -3])
        );
    }

    #[test]
    fn generate_rejects_bad_words() {
        assert!(generate_chain(&word("R")).is_err());
        assert!(generate_chain(&word("OO")).is_err());
        assert!(generate_chain(&word("OJ0")).is_err());
        assert!(generate_chain(&word("OJ5")).is_err());
    }

    #[test]
    fn recover_examples() {
        let words = recover_words(&[-1, -1]);
        assert_eq!(words.into_iter().collect::<Vec<_>>(), vec![word("O")]);
        let words = recover_words(&[0]);
        assert_eq!(
            words.into_iter().collect::<Vec<_>>(),
            vec![BlowupWord::default()]
        );
        assert!(recover_words(&[-2, -2, -1, -3]).contains(&word("ORR")));
        assert!(recover_words(&[-2, -2]).is_empty());
    }

    #[test]
    fn word_text_round_trip() {
        for s in ["O", "ORLJ0R", "OJ12", "-"] {
            assert_eq!(word(s).to_string(), s);
        }
        assert!("OX".parse::<BlowupWord>().is_err());
    }

    #[test]
    fn hj_examples() {
        assert_eq!(hj_expand(5, 3).unwrap().expansion, vec![2, 3]);
        assert_eq!(hj_expand(2, 1).unwrap().expansion, vec![2]);
        assert_eq!(hj_expand(4, 3).unwrap().expansion, vec![2, 2, 2]);
        assert!(hj_expand(6, 4).is_err());
        assert!(hj_expand(3, 3).is_err());
        assert!(hj_expand(3, 0).is_err());
    }
}
