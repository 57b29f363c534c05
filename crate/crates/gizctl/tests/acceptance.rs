//! The ten acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p gizctl --test acceptance -- --nocapture` to see the table.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use gizatullin::autgroup::{toric_report, GraphShape};
use gizatullin::configinv::symmetry_group;
use gizatullin::document::{emit_surface, parse_surface};
use gizatullin::extdiv::{
    exceptional_components, exceptional_components_of, exceptional_components_of_reversed,
};
use gizatullin::orbits::{orbit_decomposition, Verdict};
use gizatullin::poly::{rat, ratio};
use gizatullin::serieslift::{
    correspondence_check, feather_action, lift_word_series, TriangularMap, TruncatedSeries2, Turn,
};
use gizatullin::sweep::{enumerate_sweep, Property};
use gizatullin::zigzag::{
    elementary_shift, hj_expand, hj_value, reverse_chain, standardize, Direction,
};
use gizatullin::{CStarPoint, PointSet, Poly, WeightedChain};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example_text() -> String {
    std::fs::read_to_string(corpus_dir().join("example32.surf")).unwrap()
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

fn set(xs: &[usize]) -> BTreeSet<usize> {
    xs.iter().copied().collect()
}

fn exceptional_goldens() -> Outcome {
    let limit = Duration::from_millis(100);
    let t = Instant::now();
    let e = exceptional_components(&[-3, -1, -3, -1, -3]).map_err(|e| e.to_string())?;
    let first = t.elapsed();
    check(e == set(&[4, 5]), || format!("(-3,-1,-3,-1,-3) gave {e:?}"))?;
    let div = parse_surface(&example_text()).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let d = exceptional_components_of(&div).map_err(|e| e.to_string())?;
    let second = t.elapsed();
    let t = Instant::now();
    let dv = exceptional_components_of_reversed(&div).map_err(|e| e.to_string())?;
    let third = t.elapsed();
    check(d == set(&[3, 5]), || format!("E_D = {d:?}"))?;
    check(dv == set(&[5]), || format!("E_D^v = {dv:?}"))?;
    let worst = first.max(second).max(third);
    check(worst < limit, || format!("slowest golden took {worst:?}"))?;
    Ok(format!("{{4,5}}, {{3,5}}, {{5}}; slowest {worst:?}"))
}

fn orbit_example() -> Outcome {
    let div = parse_surface(&example_text()).map_err(|e| e.to_string())?;
    let r = orbit_decomposition(&div).map_err(|e| e.to_string())?;
    check(r.verdict == Verdict::NotTransitive, || {
        format!("verdict {}", r.verdict)
    })?;
    check(r.fixed_points.len() == 1, || {
        format!("fixed points {:?}", r.fixed_points)
    })?;
    check(r.exact && r.orbit_count() == Some(2), || {
        format!("count {:?}", r.orbit_count())
    })?;
    Ok("NotTransitive, 1 fixed point, 2 orbits (exact)".into())
}

/// lcm(1..=12)
const TURN: i64 = 27720;

fn rotation_oracle(points: &BTreeSet<(i64, i64)>) -> (usize, BTreeSet<BTreeSet<(i64, i64)>>) {
    let rot = |k: i64, &(m, a): &(i64, i64)| (m, (a + k) % TURN);
    let group: Vec<i64> = (0..TURN)
        .filter(|&k| points.iter().all(|p| points.contains(&rot(k, p))))
        .collect();
    let orbits = points
        .iter()
        .map(|p| group.iter().map(|&k| rot(k, p)).collect())
        .collect();
    (group.len(), orbits)
}

fn finite_set_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let to_point = |&(m, a): &(i64, i64)| CStarPoint::new(rat(m), ratio(a, TURN)).unwrap();
    let mut mismatches = 0;
    for _ in 0..500 {
        let size = rng.gen_range(1..=8);
        let mut points = BTreeSet::new();
        while points.len() < size {
            let q = rng.gen_range(1..=12i64);
            points.insert((rng.gen_range(1..=3i64), rng.gen_range(0..q) * (TURN / q)));
        }
        let got = symmetry_group(&points.iter().map(to_point).collect::<PointSet>());
        let (d, orbits) = rotation_oracle(&points);
        let got_orbits: BTreeSet<BTreeSet<CStarPoint>> = got
            .orbits
            .iter()
            .map(|o| o.iter().cloned().collect())
            .collect();
        let want: BTreeSet<BTreeSet<CStarPoint>> = orbits
            .iter()
            .map(|o| o.iter().map(to_point).collect())
            .collect();
        if got.d != d || got.m != orbits.len() || got_orbits != want {
            mismatches += 1;
        }
    }
    check(mismatches == 0, || format!("{mismatches} mismatches"))?;
    Ok("500 sets, 0 mismatches".into())
}

fn reversion_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let len = rng.gen_range(1..=12usize);
        let weights: Vec<i64> = if len <= 3 && rng.gen_bool(0.3) {
            vec![0; len]
        } else {
            let len = len.max(3);
            let mut w = vec![0, 0];
            w.extend((2..len).map(|_| rng.gen_range(-6..=-2i64)));
            w
        };
        let chain = WeightedChain::new(weights).unwrap();
        let rev = reverse_chain(&chain).and_then(|r| reverse_chain(&r));
        if rev.as_ref() != Ok(&chain) {
            failures.push(format!("reverse twice on {chain}"));
            continue;
        }
        let mut scrambled = chain.clone();
        for _ in 0..rng.gen_range(0..=10) {
            let zeros: Vec<usize> = (0..scrambled.len())
                .filter(|&i| scrambled.weights()[i] == 0)
                .collect();
            if zeros.is_empty() {
                break;
            }
            let v = zeros[rng.gen_range(0..zeros.len())];
            let dir = if rng.gen_bool(0.5) {
                Direction::Left
            } else {
                Direction::Right
            };
            if let Ok(next) = elementary_shift(&scrambled, v, dir) {
                scrambled = next;
            }
        }
        match standardize(&scrambled) {
            Ok((back, _)) if back == chain => {}
            other => failures.push(format!("{chain} scrambled to {scrambled}: {other:?}")),
        }
    }
    check(failures.is_empty(), || {
        format!("{} failures, first: {}", failures.len(), failures[0])
    })?;
    Ok("1000 chains, 0 failures".into())
}

fn claim3_sweep() -> Outcome {
    let t = Instant::now();
    let s = enumerate_sweep(8, Property::Claim3).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    check(s.checked > 0, || "nothing checked".into())?;
    check(s.counterexamples == 0, || {
        format!("{} counterexamples: {:?}", s.counterexamples, s.samples)
    })?;
    check(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!(
        "{} divisors, 0 counterexamples, {took:?}",
        s.checked
    ))
}

/// Rows: `(u, v)` exponents of `x` and `y` in the final chart.
fn exponent_matrix(word: &[Turn]) -> [[i64; 2]; 2] {
    let mut e = [[1, 0], [1, 1]];
    for t in word {
        for row in &mut e {
            *row = match t {
                Turn::L => [row[0] + row[1], row[1]],
                Turn::R => [row[0], row[0] + row[1]],
            };
        }
    }
    e
}

fn recurrence(word: &[Turn]) -> (usize, usize) {
    let mut kl = (0usize, 1usize);
    for t in word {
        kl = match t {
            Turn::L => (kl.0 + kl.1, kl.1),
            Turn::R => (kl.0, kl.0 + kl.1),
        };
    }
    kl
}

fn series_coherence() -> Outcome {
    const N: usize = 16;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let t = Instant::now();
    let q = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        ratio(n, rng.gen_range(1..=3))
    };
    for case in 0..200 {
        let (a, b) = (q(&mut rng), q(&mut rng));
        let mut coeffs = vec![BigRational::zero()];
        coeffs.extend((0..rng.gen_range(0..=3)).map(|_| rat(rng.gen_range(-2..=2))));
        let psi = TriangularMap::new(a, b, Poly::new(coeffs)).unwrap();
        let word: Vec<Turn> = (0..rng.gen_range(0..=10))
            .map(|_| if rng.gen_bool(0.5) { Turn::L } else { Turn::R })
            .collect();
        let ctx = || format!("case {case}: word {word:?}");
        let form = lift_word_series(&psi, &word, N).map_err(|e| format!("{}: {e}", ctx()))?;
        check((form.k, form.l) == recurrence(&word), || {
            format!("{}: (k,l) = {:?}", ctx(), (form.k, form.l))
        })?;
        check((form.k == 0) == !word.contains(&Turn::L), ctx)?;

        // closed form: A = U^{F00}, B = U^{F10} with U = 1 + P(y)/(a x)
        let e = exponent_matrix(&word);
        let (f00, f10) = (e[1][1], -e[1][0]);
        let mut u = TruncatedSeries2::one(N + form.k + form.l);
        for (i, c) in psi.p().coeffs().iter().enumerate().skip(1) {
            let i = i as i64;
            u.add_term(
                (i * e[1][0] - e[0][0]) as usize,
                (i * e[1][1] - e[0][1]) as usize,
                c / psi.a(),
            );
        }
        let one = TruncatedSeries2::one(N + form.k + form.l);
        for (power, got) in [(f00, &form.r), (f10, &form.s)] {
            let want = u.pow(power).unwrap().sub(&one).div_monomial(form.k, form.l);
            let want = want.ok_or_else(|| format!("{}: not divisible by u^k v^l", ctx()))?;
            check(want.truncate(N) == *got, || {
                format!("{}: residual series differ", ctx())
            })?;
        }
        if form.l >= 2 {
            let act = feather_action(&form, &CStarPoint::one()).map_err(|e| e.to_string())?;
            check(
                act.shift.is_zero() && act.scale == &form.alpha / &form.beta,
                || format!("{}: atom moved", ctx()),
            )?;
            let (x, _) = form.components();
            check((0..=N).all(|i| x.coeff(i, 1).is_zero()), || {
                format!("{}: v-linear term", ctx())
            })?;
        }
    }
    let took = t.elapsed();
    check(took < Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!("200 maps, 0 failures, {took:?}"))
}

fn odd_n_symmetry() -> Outcome {
    let t = Instant::now();
    let s = enumerate_sweep(9, Property::OddNSymmetry).map_err(|e| e.to_string())?;
    let took = t.elapsed();
    check(s.counterexamples == 0, || {
        format!("{} symmetric odd-n divisors", s.counterexamples)
    })?;
    check(s.odd_palindromes == 0, || {
        format!("{} odd palindromic tails", s.odd_palindromes)
    })?;
    check(took < Duration::from_secs(120), || format!("took {took:?}"))?;
    Ok(format!(
        "{} divisors, none symmetric with odd n, {took:?}",
        s.checked
    ))
}

fn correspondence() -> Outcome {
    let values = [
        rat(1),
        rat(-1),
        rat(2),
        rat(-2),
        rat(3),
        rat(-3),
        ratio(1, 2),
    ];
    let pool = [rat(1), rat(-1), rat(2), ratio(1, 3), rat(-5), ratio(7, 2)];
    let mut deviations = 0;
    let mut runs = 0;
    for m in 0..=4 {
        for mask in 0u32..(1 << pool.len()) {
            if mask.count_ones() > 4 {
                continue;
            }
            let bases: Vec<BigRational> = (0..pool.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| pool[i].clone())
                .collect();
            for a in &values {
                runs += 1;
                match correspondence_check(m, &bases, a) {
                    Ok((w, z)) if w == a.recip() && z.is_zero() => {}
                    _ => deviations += 1,
                }
            }
        }
    }
    check(deviations == 0, || format!("{deviations} deviations"))?;
    Ok(format!("{runs} runs, 0 deviations"))
}

fn eval_fraction(ks: &[i64]) -> (i64, i64) {
    let (mut p, mut q) = (1i64, 0i64);
    for &k in ks.iter().rev() {
        (p, q) = (k * p - q, p);
    }
    (p, q)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn toric_sweep() -> Outcome {
    let mut cases = 0;
    for d in 1..=30i64 {
        for e in 0..d {
            if gcd(d, e) != 1 {
                continue;
            }
            cases += 1;
            let rep = toric_report(d, e).map_err(|err| format!("({d},{e}): {err}"))?;
            let self_inverse = (e * e - 1).rem_euclid(d) == 0;
            check(
                matches!(rep.shape, GraphShape::Loop { .. }) == self_inverse,
                || format!("({d},{e}): shape {}", rep.shape),
            )?;
            let back = toric_report(d, rep.e_prime).map_err(|err| err.to_string())?;
            check(d == 1 || back.e_prime == e, || {
                format!("({d},{e}): e'' = {}", back.e_prime)
            })?;
            let mut w = rep.divisor.weights().to_vec();
            while let Some(p) = (3..w.len()).find(|&p| w[p] == -1) {
                w[p - 1] += 1;
                if p + 1 < w.len() {
                    w[p + 1] += 1;
                }
                w.remove(p);
            }
            check(w == [0, 0, 0], || format!("({d},{e}): contracts to {w:?}"))?;
        }
    }
    let mut fractions = 0;
    for p in 2..=200i64 {
        for q in 1..p {
            if gcd(p, q) != 1 {
                continue;
            }
            fractions += 1;
            let h = hj_expand(p, q).map_err(|e| e.to_string())?;
            check(eval_fraction(&h.expansion) == (p, q), || {
                format!("{p}/{q}: {:?}", h.expansion)
            })?;
            check(hj_value(&h.expansion) == Some(ratio(p, q)), || {
                format!("hj_value on {p}/{q}")
            })?;
        }
    }
    Ok(format!(
        "{cases} (d,e) pairs, {fractions} fractions, 0 failures"
    ))
}

fn cli_round_trip() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_gizctl");
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "surf"))
        .collect();
    files.sort();
    check(files.len() >= 20, || {
        format!("corpus has {} documents", files.len())
    })?;
    for f in &files {
        let div = parse_surface(&std::fs::read_to_string(f).unwrap()).map_err(|e| e.to_string())?;
        check(
            parse_surface(&emit_surface(&div)).as_ref() == Ok(&div),
            || format!("{}", f.display()),
        )?;
        for cmd in ["emit", "classify", "orbits", "autgroup", "export-dot"] {
            let runs: Vec<_> = (0..2)
                .map(|_| {
                    Command::new(bin)
                        .args([cmd, f.to_str().unwrap(), "--json"])
                        .output()
                        .unwrap()
                })
                .collect();
            check(
                runs[0].stdout == runs[1].stdout && runs[0].status == runs[1].status,
                || format!("{cmd} {} differs between runs", f.display()),
            )?;
            let code = runs[0].status.code().unwrap_or(-1);
            check([0, 2, 3].contains(&code), || {
                format!("{cmd} {} exited {code}", f.display())
            })?;
        }
    }
    Ok(format!("{} documents, byte-identical reruns", files.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("exceptional-component goldens", exceptional_goldens),
        ("orbit worked example", orbit_example),
        ("finite-set symmetry oracle", finite_set_oracle),
        ("reversion algebra", reversion_algebra),
        ("chart-exponent sweep (K = 8)", claim3_sweep),
        ("series/recurrence coherence", series_coherence),
        ("odd-n symmetry sweep (K = 9)", odd_n_symmetry),
        ("correspondence formula", correspondence),
        ("toric sweep and HJ round trip", toric_sweep),
        ("CLI round trip and determinism", cli_round_trip),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = f();
        let took = t.elapsed();
        match &result {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL {name} ({took:.2?}): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
