use gizatullin::zigzag::{
    elementary_shift, generate_chain, recover_words, reverse_chain, standardize, BlowupWord,
    Direction, Letter, WeightedChain,
};
use proptest::prelude::*;

fn standard_chain() -> impl Strategy<Value = WeightedChain> {
    prop_oneof![
        (1usize..=3).prop_map(|n| WeightedChain::new(vec![0; n]).unwrap()),
        prop::collection::vec(-6i64..=-2, 1..=10).prop_map(|tail| {
            let mut w = vec![0, 0];
            w.extend(tail);
            WeightedChain::new(w).unwrap()
        }),
    ]
}

/// Applies up to `steps` shifts chosen by `picks` among the zero vertices.
fn scramble(chain: &WeightedChain, picks: &[(usize, bool)]) -> WeightedChain {
    let mut c = chain.clone();
    for &(pick, left) in picks {
        let zeros: Vec<usize> = (0..c.len()).filter(|&i| c.weights()[i] == 0).collect();
        if zeros.is_empty() {
            break;
        }
        let v = zeros[pick % zeros.len()];
        let dir = if left {
            Direction::Left
        } else {
            Direction::Right
        };
        if let Ok(next) = elementary_shift(&c, v, dir) {
            c = next;
        }
    }
    c
}

/// Words whose jumps never hit the tracked gap, so each history has one
/// spelling.
fn canonical_word() -> impl Strategy<Value = BlowupWord> {
    prop::collection::vec((0u8..3, 0usize..16), 0..7).prop_map(|raw| {
        let mut letters = vec![Letter::OuterStart];
        let mut tracked = 0usize;
        for (gaps, (kind, g)) in (1usize..).zip(raw) {
            match kind {
                0 => {
                    letters.push(Letter::L);
                }
                1 => {
                    letters.push(Letter::R);
                    tracked += 1;
                }
                _ => {
                    let g = g % gaps;
                    if g == tracked {
                        letters.push(Letter::L);
                    } else {
                        letters.push(Letter::Jump(g));
                        if g < tracked {
                            tracked += 1;
                        }
                    }
                }
            }
        }
        BlowupWord(letters)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn reversal_is_an_involution(c in standard_chain()) {
        let r = reverse_chain(&c).unwrap();
        prop_assert_eq!(reverse_chain(&r).unwrap(), c);
    }

    #[test]
    fn standardize_undoes_scrambles(
        c in standard_chain(),
        picks in prop::collection::vec((0usize..8, any::<bool>()), 0..=10),
    ) {
        let scrambled = scramble(&c, &picks);
        let (back, _) = standardize(&scrambled).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn standardize_log_is_idempotent(c in standard_chain()) {
        let (s, log) = standardize(&c).unwrap();
        prop_assert!(log.is_empty());
        prop_assert_eq!(s, c);
    }

    #[test]
    fn recover_inverts_generate(word in canonical_word()) {
        let generated = generate_chain(&word).unwrap();
        let words = recover_words(generated.chain.weights());
        prop_assert!(words.contains(&word), "{} not in {:?}", word, words);
        for w in &words {
            prop_assert_eq!(&generate_chain(w).unwrap().chain, &generated.chain);
        }
    }

    #[test]
    fn word_text_round_trips(word in canonical_word()) {
        prop_assert_eq!(word.to_string().parse::<BlowupWord>().unwrap(), word);
    }
}

#[test]
fn shift_and_generate_examples() {
    let c = |w: &[i64]| WeightedChain::new(w.to_vec()).unwrap();
    assert_eq!(
        elementary_shift(&c(&[0, 0, -2, -3]), 1, Direction::Left).unwrap(),
        c(&[-1, 0, -1, -3])
    );
    let word: BlowupWord = "ORR".parse().unwrap();
    assert_eq!(generate_chain(&word).unwrap().chain, c(&[-2, -2, -1, -3]));
    assert!(recover_words(&[-2, -2, -1, -3]).contains(&word));
    assert_eq!(
        standardize(&c(&[-2, 0, 0, -3])).unwrap().0,
        c(&[0, 0, -2, -3])
    );
}
