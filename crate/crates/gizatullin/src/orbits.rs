//! Invariant subsets of the automorphism-group action, fixed points, and
//! the transitivity verdict.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::configinv::{class_witness, paired_orbits, q_self_reversed, symmetry_group, CStarPoint};
use crate::extdiv::{
    exceptional_union, matching_pairs, ExtDivError, ExtendedDivisor, FeatherLabel,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Transitive,
    NotTransitive,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `O_{i,j}`: atoms whose base points lie in the `j`-th `G(A_i)`-orbit,
/// merged with the matching atoms on `C_{i^∨}` when the invariant is
/// self-reversed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Part {
    pub component: usize,
    pub orbit: usize,
    pub atoms: Vec<FeatherLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub atoms: Vec<FeatherLabel>,
    pub exceptional: BTreeSet<usize>,
    pub self_reversed: bool,
    pub parts: Vec<Part>,
    pub o0: String,
    pub fixed_points: Vec<FeatherLabel>,
    pub verdict: Verdict,
    pub exact: bool,
}

impl OrbitReport {
    /// Orbit count, known only when the parts are exactly the small orbits.
    pub fn orbit_count(&self) -> Option<usize> {
        self.exact.then_some(self.parts.len() + 1)
    }
}

pub fn orbit_decomposition(div: &ExtendedDivisor) -> Result<OrbitReport, ExtDivError> {
    let atoms = matching_pairs(div)?;
    if atoms.is_empty() {
        return Ok(OrbitReport {
            atoms,
            exceptional: BTreeSet::new(),
            self_reversed: false,
            parts: Vec::new(),
            o0: "V".into(),
            fixed_points: Vec::new(),
            verdict: Verdict::Transitive,
            exact: false,
        });
    }
    let exceptional = exceptional_union(div)?;
    let reversal = q_self_reversed(div)?;
    let n = div.n();
    let feathered: Vec<usize> = (2..=n).filter(|&i| div.r(i) > 0).collect();
    let labelled: Vec<(FeatherLabel, CStarPoint)> =
        div.labelled().map(|(l, f)| (l, f.point.clone())).collect();
    let atoms_in = |i: usize, orbit: &crate::configinv::PointSet| -> Vec<FeatherLabel> {
        labelled
            .iter()
            .filter(|(l, p)| l.component == i && orbit.contains(p))
            .map(|(l, _)| *l)
            .collect()
    };

    let mut parts = Vec::new();
    let mut fixed_points = Vec::new();
    for &i in &feathered {
        if exceptional.contains(&i) {
            continue;
        }
        let j = div.dual_index(i);
        let a = div.points_on(i);
        if reversal.equal && j != i && !exceptional.contains(&j) {
            if j < i {
                continue;
            }
            let gamma = class_witness(div, i, j).expect("self-reversed invariant has a witness");
            for (k, (orbit, image)) in paired_orbits(&a, &gamma).into_iter().enumerate() {
                let mut atoms = atoms_in(i, &orbit);
                atoms.extend(atoms_in(j, &image));
                parts.push(Part {
                    component: i,
                    orbit: k + 1,
                    atoms,
                });
            }
        } else {
            let sym = symmetry_group(&a);
            for (k, orbit) in sym.orbits.iter().enumerate() {
                let atoms = atoms_in(i, orbit);
                if !reversal.equal && sym.d == 1 {
                    fixed_points.extend(atoms.iter().copied());
                }
                parts.push(Part {
                    component: i,
                    orbit: k + 1,
                    atoms,
                });
            }
        }
    }
    fixed_points.sort();

    let exact = feathered.len() == 1;
    let verdict = if !parts.is_empty() {
        Verdict::NotTransitive
    } else if exact || feathered.is_empty() || feathered.iter().all(|i| exceptional.contains(i)) {
        Verdict::Transitive
    } else {
        Verdict::Undetermined
    };
    let o0 = if parts.is_empty() {
        "V".to_string()
    } else {
        let names: Vec<String> = parts
            .iter()
            .map(|p| format!("O_{{{},{}}}", p.component, p.orbit))
            .collect();
        format!("V \\ ({})", names.join(" ∪ "))
    };
    Ok(OrbitReport {
        atoms,
        exceptional,
        self_reversed: reversal.equal,
        parts,
        o0,
        fixed_points,
        verdict,
        exact,
    })
}

/// Upper bound on `V \ O` by same-label atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementBound {
    pub atoms: Vec<FeatherLabel>,
    pub caveat: &'static str,
}

pub fn big_orbit_complement_bound(div: &ExtendedDivisor) -> Result<ComplementBound, ExtDivError> {
    div.require_smooth()?;
    Ok(ComplementBound {
        atoms: div.labels(),
        caveat: "intersections F_i ∩ F_j^∨ with i ≠ j are not enumerated",
    })
}

/// Feathers on exceptional components; each lies in the big orbit away
/// from the boundary.
pub fn feathers_on_exceptional_in_o(
    div: &ExtendedDivisor,
) -> Result<Vec<FeatherLabel>, ExtDivError> {
    div.require_smooth()?;
    div.require_condition_star()?;
    if div.feathers().is_empty() {
        return Ok(Vec::new());
    }
    let e = exceptional_union(div)?;
    Ok(div
        .labels()
        .into_iter()
        .filter(|l| e.contains(&l.component))
        .collect())
}
