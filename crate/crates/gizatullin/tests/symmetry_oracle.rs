use std::collections::BTreeSet;

use gizatullin::configinv::symmetry_group;
use gizatullin::poly::{rat, ratio};
use gizatullin::{CStarPoint, PointSet};
use proptest::prelude::*;

/// lcm(1..=12): every angle with denominator ≤ 12 is a multiple of 1/TURN.
const TURN: i64 = 27720;

type Pt = (i64, i64);

/// Scans every rotation by `k/TURN`; the result is `(d, orbit partition)`.
fn oracle(points: &BTreeSet<Pt>) -> (usize, BTreeSet<BTreeSet<Pt>>) {
    let rotate = |k: i64, &(m, a): &Pt| (m, (a + k) % TURN);
    let group: Vec<i64> = (0..TURN)
        .filter(|&k| points.iter().all(|p| points.contains(&rotate(k, p))))
        .collect();
    let orbits = points
        .iter()
        .map(|p| group.iter().map(|&k| rotate(k, p)).collect())
        .collect();
    (group.len(), orbits)
}

fn to_point(&(m, a): &Pt) -> CStarPoint {
    CStarPoint::new(rat(m), ratio(a, TURN)).unwrap()
}

fn point_sets() -> impl Strategy<Value = BTreeSet<Pt>> {
    prop::collection::btree_set(
        (1i64..=3, 1i64..=12).prop_flat_map(|(m, q)| (Just(m), 0..q, Just(q))),
        1..=8,
    )
    .prop_map(|raw| {
        raw.into_iter()
            .map(|(m, p, q)| (m, p * (TURN / q)))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn symmetry_group_matches_rotation_scan(points in point_sets()) {
        let set: PointSet = points.iter().map(to_point).collect();
        let got = symmetry_group(&set);
        let (d, orbits) = oracle(&points);
        prop_assert_eq!(got.d, d);
        prop_assert_eq!(got.m, orbits.len());
        let got_orbits: BTreeSet<BTreeSet<CStarPoint>> =
            got.orbits.iter().map(|o| o.iter().cloned().collect()).collect();
        let want: BTreeSet<BTreeSet<CStarPoint>> =
            orbits.iter().map(|o| o.iter().map(to_point).collect()).collect();
        prop_assert_eq!(got_orbits, want);
    }
}

#[test]
fn roots_of_unity_have_full_group() {
    let set: PointSet = (0..6).map(|k| CStarPoint::root_of_unity(k, 6)).collect();
    let s = symmetry_group(&set);
    assert_eq!((s.d, s.m), (6, 1));
}
