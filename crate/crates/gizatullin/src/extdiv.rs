//! Extended divisors: the boundary chain together with its feathers.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::configinv::{CStarPoint, PointSet};
use crate::zigzag::{reverse_chain, CreationOrder, WeightedChain, ZigzagError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtDivError {
    #[error("condition (*) fails: {0}")]
    ConditionStar(String),
    #[error("feather {0} is not irreducible; the surface is singular")]
    NotSmooth(FeatherLabel),
    #[error("pre-feather weights {0:?} are not realizable by inner blowups after one outer start")]
    Unrealizable(Vec<i64>),
    #[error("maximal exceptional runs of length {m} create different index sets {first:?} and {second:?}")]
    AmbiguousExceptional {
        m: usize,
        first: BTreeSet<usize>,
        second: BTreeSet<usize>,
    },
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("chain of length {0} is too long for the exact search")]
    TooLong(usize),
    #[error(transparent)]
    Zigzag(#[from] ZigzagError),
}

/// `(i, l)`: the `l`-th feather on `C_i`, counted from 1 in base-point order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FeatherLabel {
    pub component: usize,
    pub index: usize,
}

impl fmt::Display for FeatherLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.component, self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Feather {
    pub component: usize,
    pub point: CStarPoint,
    pub bridge: i64,
    pub tail: Vec<i64>,
    /// Only needed when it differs from `component`.
    pub mother: Option<usize>,
}

impl Feather {
    pub fn irreducible(component: usize, point: CStarPoint) -> Self {
        Self {
            component,
            point,
            bridge: -1,
            tail: Vec::new(),
            mother: None,
        }
    }

    pub fn mother(&self) -> usize {
        self.mother.unwrap_or(self.component)
    }

    pub fn is_a_k(&self) -> bool {
        self.bridge == -1 && self.tail.iter().all(|&w| w == -2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedDivisor {
    chain: WeightedChain,
    feathers: Vec<Feather>,
}

impl ExtendedDivisor {
    /// Feathers are kept sorted by component and base point.
    pub fn new(chain: WeightedChain, mut feathers: Vec<Feather>) -> Self {
        feathers.sort();
        Self { chain, feathers }
    }

    pub fn chain(&self) -> &WeightedChain {
        &self.chain
    }

    pub fn feathers(&self) -> &[Feather] {
        &self.feathers
    }

    pub fn n(&self) -> usize {
        self.chain.n()
    }

    pub fn dual_index(&self, i: usize) -> usize {
        self.n() + 2 - i
    }

    pub fn r(&self, i: usize) -> usize {
        self.feathers.iter().filter(|f| f.component == i).count()
    }

    pub fn labels(&self) -> Vec<FeatherLabel> {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        self.feathers
            .iter()
            .map(|f| {
                let c = counts.entry(f.component).or_default();
                *c += 1;
                FeatherLabel {
                    component: f.component,
                    index: *c,
                }
            })
            .collect()
    }

    pub fn labelled(&self) -> impl Iterator<Item = (FeatherLabel, &Feather)> {
        self.labels().into_iter().zip(self.feathers.iter())
    }

    pub fn points_on(&self, i: usize) -> PointSet {
        self.feathers
            .iter()
            .filter(|f| f.component == i)
            .map(|f| f.point.clone())
            .collect()
    }

    /// `A_{i,s}`: base points on `C_i` grouped by feather tail length.
    pub fn points_by_tail_len(&self, i: usize) -> BTreeMap<usize, PointSet> {
        let mut map: BTreeMap<usize, PointSet> = BTreeMap::new();
        for f in self.feathers.iter().filter(|f| f.component == i) {
            map.entry(f.tail.len()).or_default().insert(f.point.clone());
        }
        map
    }

    pub fn is_smooth(&self) -> bool {
        self.feathers.iter().all(|f| f.tail.is_empty())
    }

    /// `v_i = w_i + r_i` for `i = 2..n`.
    pub fn pre_feather_tail(&self) -> Vec<i64> {
        self.chain
            .tail()
            .iter()
            .enumerate()
            .map(|(k, &w)| w + self.r(k + 2) as i64)
            .collect()
    }

    /// Weights and feather counts of `D_ext^{≥2}` agree with their mirror.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        let tail = self.chain.tail();
        tail.iter().eq(tail.iter().rev())
            && (2..=n).all(|i| self.feather_shapes(i) == self.feather_shapes(self.dual_index(i)))
    }

    fn feather_shapes(&self, i: usize) -> Vec<(i64, Vec<i64>)> {
        let mut v: Vec<_> = self
            .feathers
            .iter()
            .filter(|f| f.component == i)
            .map(|f| (f.bridge, f.tail.clone()))
            .collect();
        v.sort();
        v
    }

    pub fn require_smooth(&self) -> Result<(), ExtDivError> {
        match self.labelled().find(|(_, f)| !f.tail.is_empty()) {
            Some((label, _)) => Err(ExtDivError::NotSmooth(label)),
            None => Ok(()),
        }
    }

    pub fn require_condition_star(&self) -> Result<(), ExtDivError> {
        let chain = &self.chain;
        if !(chain.is_standard() || chain.is_m_standard(1)) {
            return Err(ExtDivError::ConditionStar(format!(
                "boundary {chain} is neither standard nor 1-standard"
            )));
        }
        let n = self.n();
        if n < 2 {
            return Ok(());
        }
        for i in [2, n] {
            if self.r(i) > 0 {
                return Err(ExtDivError::ConditionStar(format!(
                    "feather attached to C_{i}"
                )));
            }
        }
        let types = classify_components(self);
        for i in 3..n {
            if types.get(i) != ComponentType::Star {
                return Err(ExtDivError::ConditionStar(format!(
                    "C_{i} is a +-component"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiagnosticKind {
    /// Violates a type invariant.
    Structural,
    /// Well formed, but no blowup history produces it.
    Realizability,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub location: String,
    pub message: String,
    pub kind: DiagnosticKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

pub fn validate(div: &ExtendedDivisor) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let structural = |location: String, message: String| Diagnostic {
        location,
        message,
        kind: DiagnosticKind::Structural,
    };
    let chain = div.chain();
    let n = div.n();
    let m_standard =
        chain.len() >= 2 && chain.weights()[0] == 0 && chain.is_m_standard(-chain.weights()[1]);
    if !(chain.is_standard() || m_standard) {
        out.push(structural(
            "weights".into(),
            format!("boundary {chain} is not in standard or m-standard form"),
        ));
    }
    let mut seen: BTreeMap<usize, BTreeSet<&CStarPoint>> = BTreeMap::new();
    for (label, f) in div.labelled() {
        let loc = format!("feather {label}");
        if f.component < 2 || f.component > n {
            out.push(structural(
                loc.clone(),
                format!("component {} outside 2..{n}", f.component),
            ));
        }
        if f.bridge > -1 {
            out.push(structural(
                loc.clone(),
                "bridge weight ≤ −1 required".into(),
            ));
        }
        if f.tail.iter().any(|&w| w > -2) {
            out.push(structural(loc.clone(), "tail weight ≤ −2 required".into()));
        }
        if let Some(m) = f.mother {
            if m < 2 || m > n {
                out.push(structural(
                    loc.clone(),
                    format!("mother component {m} outside 2..{n}"),
                ));
            }
        }
        if !seen.entry(f.component).or_default().insert(&f.point) {
            out.push(structural(
                format!("C_{}", f.component),
                format!("coincident base points at {}", f.point),
            ));
        }
    }
    if out.is_empty() && chain.len() >= 3 {
        let v = div.pre_feather_tail();
        if crate::zigzag::first_creation_order(&v).is_none() {
            out.push(Diagnostic {
                location: "weights".into(),
                message: format!("pre-feather weights {v:?} are not realizable"),
                kind: DiagnosticKind::Realizability,
            });
        }
    }
    out
}

/// A forest of weighted vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedTree {
    weights: Vec<i64>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl WeightedTree {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn chain(weights: &[i64]) -> Self {
        let mut t = Self::new();
        let mut prev = None;
        for &w in weights {
            let v = t.add_vertex(w);
            if let Some(p) = prev {
                t.add_edge(p, v);
            }
            prev = Some(v);
        }
        t
    }

    pub fn add_vertex(&mut self, weight: i64) -> usize {
        self.weights.push(weight);
        self.adjacency.push(BTreeSet::new());
        self.weights.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adjacency[a].insert(b);
        self.adjacency[b].insert(a);
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Whether repeated contraction of (−1)-vertices of degree at most two can
/// remove every vertex. All contraction orders are explored.
pub fn is_contractible(tree: &WeightedTree) -> bool {
    let state = State {
        weights: tree.weights.iter().map(|&w| Some(w)).collect(),
        adjacency: tree.adjacency.clone(),
    };
    let mut dead = HashSet::new();
    contract_tree(state, &mut dead)
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    weights: Vec<Option<i64>>,
    adjacency: Vec<BTreeSet<usize>>,
}

fn contract_tree(state: State, dead: &mut HashSet<State>) -> bool {
    if state.weights.iter().all(Option::is_none) {
        return true;
    }
    if dead.contains(&state) {
        return false;
    }
    for v in 0..state.weights.len() {
        if state.weights[v] != Some(-1) || state.adjacency[v].len() > 2 {
            continue;
        }
        let mut next = state.clone();
        let nbrs: Vec<usize> = next.adjacency[v].iter().copied().collect();
        for &u in &nbrs {
            next.adjacency[u].remove(&v);
            if let Some(w) = next.weights[u].as_mut() {
                *w += 1;
            }
        }
        if let [a, b] = nbrs[..] {
            next.adjacency[a].insert(b);
            next.adjacency[b].insert(a);
        }
        next.adjacency[v].clear();
        next.weights[v] = None;
        if contract_tree(next, dead) {
            return true;
        }
    }
    dead.insert(state);
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentType {
    Star,
    Plus,
}

impl fmt::Display for ComponentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentType::Star => "*",
            ComponentType::Plus => "+",
        })
    }
}

/// `τ_i` for `i = 2..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentTypes {
    types: Vec<ComponentType>,
}

impl ComponentTypes {
    pub fn get(&self, i: usize) -> ComponentType {
        self.types[i - 2]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, ComponentType)> + '_ {
        self.types.iter().enumerate().map(|(k, &t)| (k + 2, t))
    }
}

/// `D_ext^{≥k}`, optionally without one feather (given by position).
fn upper_part(div: &ExtendedDivisor, k: usize, skip: Option<usize>) -> WeightedTree {
    let mut tree = WeightedTree::new();
    let weights = div.chain().weights();
    let mut vertex_of = HashMap::new();
    for (i, &w) in weights.iter().enumerate().skip(k) {
        let v = tree.add_vertex(w);
        if let Some(&prev) = vertex_of.get(&(i.wrapping_sub(1))) {
            tree.add_edge(prev, v);
        }
        vertex_of.insert(i, v);
    }
    for (pos, f) in div.feathers().iter().enumerate() {
        if Some(pos) == skip || f.component < k {
            continue;
        }
        let Some(&anchor) = vertex_of.get(&f.component) else {
            continue;
        };
        let mut prev = anchor;
        for &w in std::iter::once(&f.bridge).chain(f.tail.iter()) {
            let v = tree.add_vertex(w);
            tree.add_edge(prev, v);
            prev = v;
        }
    }
    tree
}

pub fn classify_components(div: &ExtendedDivisor) -> ComponentTypes {
    let n = div.n();
    let mut types = Vec::new();
    for i in 2..=n {
        if i == 2 || i == n {
            types.push(ComponentType::Plus);
            continue;
        }
        let inner = !is_contractible(&upper_part(div, i + 1, None))
            && div.feathers().iter().enumerate().all(|(pos, f)| {
                f.component <= i
                    || f.mother() >= i
                    || !is_contractible(&upper_part(div, i + 1, Some(pos)))
            });
        types.push(if inner {
            ComponentType::Star
        } else {
            ComponentType::Plus
        });
    }
    ComponentTypes { types }
}

/// The longest opening run of blowups next to the outer curve `E_1`, with a
/// full creation order passing through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalRun {
    pub m: usize,
    pub indices: BTreeSet<usize>,
    pub order: CreationOrder,
}

struct Contraction {
    weights: Vec<i64>,
    ids: Vec<usize>,
}

fn mask_of(ids: &[usize]) -> u128 {
    ids.iter().fold(0u128, |acc, &i| acc | (1u128 << i))
}

/// `Some(m)` when the chain is `[-2, -2, .., -2, -1, -(m+1)]` of length `m + 2`.
fn run_length(w: &[i64]) -> Option<usize> {
    let len = w.len();
    if len < 3 {
        return None;
    }
    let m = len - 2;
    let ok =
        w[..len - 2].iter().all(|&x| x == -2) && w[len - 2] == -1 && w[len - 1] == -(m as i64 + 1);
    ok.then_some(m)
}

pub fn exceptional_run(tail: &[i64]) -> Result<ExceptionalRun, ExtDivError> {
    if tail.len() > 120 {
        return Err(ExtDivError::TooLong(tail.len()));
    }
    let unrealizable = || ExtDivError::Unrealizable(tail.to_vec());
    if tail.len() < 3 {
        return match tail {
            [-1, -1] => Ok(ExceptionalRun {
                m: 0,
                indices: BTreeSet::new(),
                order: CreationOrder {
                    outer: true,
                    gaps: Vec::new(),
                },
            }),
            _ => Err(unrealizable()),
        };
    }
    let start = Contraction {
        weights: tail.to_vec(),
        ids: (0..tail.len()).collect(),
    };
    // mask -> (parent mask, gap of the blowup undone on the way down)
    let mut parent: HashMap<u128, Option<(u128, usize)>> = HashMap::new();
    parent.insert(mask_of(&start.ids), None);
    let mut stack = vec![start];
    let mut best: Option<(usize, u128, BTreeSet<usize>)> = None;
    while let Some(state) = stack.pop() {
        let here = mask_of(&state.ids);
        if let Some(m) = run_length(&state.weights) {
            let created: BTreeSet<usize> = state.ids[1..=m].iter().map(|&p| p + 2).collect();
            match &best {
                Some((bm, _, set)) if *bm == m && *set != created => {
                    return Err(ExtDivError::AmbiguousExceptional {
                        m,
                        first: set.clone(),
                        second: created,
                    })
                }
                Some((bm, _, _)) if *bm >= m => {}
                _ => best = Some((m, here, created)),
            }
        }
        let len = state.weights.len();
        for p in 1..len.saturating_sub(1) {
            if state.weights[p] != -1 {
                continue;
            }
            let mut weights = state.weights.clone();
            let mut ids = state.ids.clone();
            weights[p - 1] += 1;
            weights[p + 1] += 1;
            weights.remove(p);
            ids.remove(p);
            let mask = mask_of(&ids);
            if parent.contains_key(&mask) {
                continue;
            }
            parent.insert(mask, Some((here, p - 1)));
            stack.push(Contraction { weights, ids });
        }
    }
    let (m, mut cursor, indices) = best.ok_or_else(unrealizable)?;
    let mut undone = Vec::new();
    while let Some(Some((up, gap))) = parent.get(&cursor) {
        undone.push(*gap);
        cursor = *up;
    }
    let mut gaps: Vec<usize> = (0..m).collect();
    gaps.extend(undone);
    let n = tail.len() + 1;
    if !indices.contains(&(n - 1)) {
        return Err(ExtDivError::Postcondition(format!(
            "C_{} is not exceptional for {tail:?}",
            n - 1
        )));
    }
    Ok(ExceptionalRun {
        m,
        indices,
        order: CreationOrder { outer: true, gaps },
    })
}

/// `𝔈` for pre-feather weights `v_2..v_n`.
pub fn exceptional_components(tail: &[i64]) -> Result<BTreeSet<usize>, ExtDivError> {
    exceptional_run(tail).map(|r| r.indices)
}

/// `𝔈_D`, with the symmetric-divisor check on top.
pub fn exceptional_components_of(div: &ExtendedDivisor) -> Result<BTreeSet<usize>, ExtDivError> {
    let set = exceptional_components(&div.pre_feather_tail())?;
    let middle = div.n() / 2 + 1;
    if div.is_symmetric() && !set.contains(&middle) {
        return Err(ExtDivError::Postcondition(format!(
            "symmetric divisor but C_{middle} is not exceptional"
        )));
    }
    Ok(set)
}

/// `𝔈_{D^∨}`, computed on the reversed pre-feather weights.
pub fn exceptional_components_of_reversed(
    div: &ExtendedDivisor,
) -> Result<BTreeSet<usize>, ExtDivError> {
    let mut v = div.pre_feather_tail();
    v.reverse();
    exceptional_components(&v)
}

/// `𝔈_D ∪ {j : j^∨ ∈ 𝔈_{D^∨}}`.
pub fn exceptional_union(div: &ExtendedDivisor) -> Result<BTreeSet<usize>, ExtDivError> {
    let mut e = exceptional_components_of(div)?;
    for j in exceptional_components_of_reversed(div)? {
        e.insert(div.dual_index(j));
    }
    Ok(e)
}

/// What is known about the reversed completion without its base points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversedSkeleton {
    pub chain: WeightedChain,
    /// `r^∨_i` for `i = 2..n`.
    pub r: Vec<usize>,
    pub types: Vec<ComponentType>,
    /// A representative of the ℂ*-class of `A^∨_i` for `i = 2..n`.
    pub classes: Vec<PointSet>,
}

impl ReversedSkeleton {
    pub fn r(&self, i: usize) -> usize {
        self.r[i - 2]
    }
}

pub fn reversed_divisor_data(div: &ExtendedDivisor) -> Result<ReversedSkeleton, ExtDivError> {
    div.require_condition_star()?;
    let n = div.n();
    let types = classify_components(div);
    let chain = reverse_chain(div.chain())?;
    Ok(ReversedSkeleton {
        chain,
        r: (2..=n).map(|i| div.r(div.dual_index(i))).collect(),
        types: (2..=n).map(|i| types.get(div.dual_index(i))).collect(),
        classes: (2..=n).map(|i| div.points_on(div.dual_index(i))).collect(),
    })
}

/// One matching atom `F_{i,l} ∩ F^∨_{i,l}` per feather.
pub fn matching_pairs(div: &ExtendedDivisor) -> Result<Vec<FeatherLabel>, ExtDivError> {
    div.require_smooth()?;
    div.require_condition_star()?;
    Ok(div.labels())
}
