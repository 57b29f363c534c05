use gizatullin::poly::{rat, ratio};
use gizatullin::serieslift::{
    correspondence_check, feather_action, lift_word_exponents, lift_word_series, monomial_value,
    TriangularMap, TruncatedSeries2, Turn,
};
use gizatullin::{CStarPoint, Poly};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

const N: usize = 16;

/// Rows give the `(u, v)` exponents of `x` and `y` in the final chart.
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

/// `U = 1 + P(y)/(a x)` written directly in the final chart.
fn u_series(psi: &TriangularMap, e: [[i64; 2]; 2], order: usize) -> TruncatedSeries2 {
    let mut u = TruncatedSeries2::one(order);
    for (i, c) in psi.p().coeffs().iter().enumerate().skip(1) {
        let i = i as i64;
        let (p, q) = (i * e[1][0] - e[0][0], i * e[1][1] - e[0][1]);
        assert!(p >= 0 && q >= 0);
        u.add_term(p as usize, q as usize, c / psi.a());
    }
    u
}

fn turns() -> impl Strategy<Value = Vec<Turn>> {
    prop::collection::vec(prop_oneof![Just(Turn::L), Just(Turn::R)], 0..=10)
}

fn nonzero_q() -> impl Strategy<Value = BigRational> {
    (prop_oneof![-3i64..=-1, 1i64..=3], 1i64..=3).prop_map(|(n, d)| ratio(n, d))
}

fn maps() -> impl Strategy<Value = TriangularMap> {
    (
        nonzero_q(),
        nonzero_q(),
        prop::collection::vec(-2i64..=2, 0..=3),
    )
        .prop_map(|(a, b, cs)| {
            let mut coeffs = vec![BigRational::zero()];
            coeffs.extend(cs.into_iter().map(rat));
            TriangularMap::new(a, b, Poly::new(coeffs)).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lift_matches_closed_form(psi in maps(), word in turns()) {
        let form = lift_word_series(&psi, &word, N).unwrap();
        let e = exponent_matrix(&word);
        prop_assert_eq!(e[0][0] * e[1][1] - e[0][1] * e[1][0], 1);
        let f = [[e[1][1], -e[0][1]], [-e[1][0], e[0][0]]];

        let (k, l) = ((e[1][0] - e[0][0]) as usize, (e[1][1] - e[0][1]) as usize);
        prop_assert_eq!((form.k, form.l), (k, l));
        prop_assert_eq!((k, l), lift_word_exponents(&word));
        prop_assert_eq!(k == 0, !word.contains(&Turn::L));

        prop_assert_eq!(form.alpha_exp, (f[0][0], f[0][1]));
        prop_assert_eq!(form.beta_exp, (f[1][0], f[1][1]));
        prop_assert_eq!(&form.alpha, &monomial_value(psi.a(), psi.b(), (f[0][0], f[0][1])));
        prop_assert_eq!(&form.beta, &monomial_value(psi.a(), psi.b(), (f[1][0], f[1][1])));

        let working = N + k + l;
        let u = u_series(&psi, e, working);
        let a_ser = u.pow(f[0][0]).unwrap();
        let b_ser = u.pow(f[1][0]).unwrap();
        for (want, got) in [(&a_ser, &form.r), (&b_ser, &form.s)] {
            for i in 0..=N {
                for j in 0..=N - i {
                    let c = if i == 0 && j == 0 && k == 0 && l == 0 {
                        want.coeff(k, l) - BigRational::one()
                    } else {
                        want.coeff(i + k, j + l)
                    };
                    prop_assert_eq!(got.coeff(i, j), c, "coefficient u^{}v^{}", i, j);
                }
            }
            for i in 0..k.max(1) {
                for j in 0..l {
                    if i + j > 0 {
                        prop_assert!(want.coeff(i, j).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn atom_is_fixed_when_l_at_least_two(psi in maps(), word in turns()) {
        let form = lift_word_series(&psi, &word, N).unwrap();
        if form.l >= 2 {
            let act = feather_action(&form, &CStarPoint::one()).unwrap();
            prop_assert!(act.shift.is_zero());
            let (x, y) = form.components();
            for i in 0..=N {
                prop_assert!(x.coeff(i, 1).is_zero());
                prop_assert!(y.coeff(i, 0).is_zero());
            }
        }
    }
}

fn short_turns() -> impl Strategy<Value = Vec<Turn>> {
    prop::collection::vec(prop_oneof![Just(Turn::L), Just(Turn::R)], 0..=8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn lift_respects_composition(p1 in maps(), p2 in maps(), word in short_turns()) {
        let both = lift_word_series(&p2.after(&p1), &word, N).unwrap();
        let f1 = lift_word_series(&p1, &word, N).unwrap();
        let f2 = lift_word_series(&p2, &word, N).unwrap();
        prop_assert_eq!(&both.alpha, &(&f1.alpha * &f2.alpha));
        prop_assert_eq!(&both.beta, &(&f1.beta * &f2.beta));
        let (x1, y1) = f1.components();
        let (x2, y2) = f2.components();
        let (x, y) = both.components();
        prop_assert_eq!(x2.compose(&x1, &y1).truncate(N), x.truncate(N));
        prop_assert_eq!(y2.compose(&x1, &y1).truncate(N), y.truncate(N));
    }
}

#[test]
fn correspondence_grid() {
    let values = [
        rat(1),
        rat(-1),
        rat(2),
        rat(-2),
        rat(3),
        rat(-3),
        ratio(1, 2),
    ];
    let base_lists: Vec<Vec<BigRational>> = vec![
        vec![],
        vec![rat(1)],
        vec![rat(1), rat(-1)],
        vec![rat(2), ratio(1, 3), rat(-5)],
        vec![rat(1), rat(2), rat(3), rat(4)],
    ];
    for m in 0..=4 {
        for bases in &base_lists {
            for a in &values {
                let (w, z) = correspondence_check(m, bases, a).unwrap();
                assert_eq!(
                    (w, z),
                    (a.recip(), BigRational::zero()),
                    "m={m} bases={bases:?} a={a}"
                );
            }
        }
    }
}
