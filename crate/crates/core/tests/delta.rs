mod common;

use artin_core::dihedral::{DihedralGroup, SearchCaps, SyllableSearch};
use artin_core::freeword::Word;
use common::{has_delta_subword, reduced_words_up_to, syllable_words, to_word};
use rayon::prelude::*;

#[test]
fn delta_powers_contain_a_delta_subword() {
    let g = DihedralGroup::new(3).unwrap();
    let mut hits = 0usize;
    let all = reduced_words_up_to(10);
    for len in 0..=10 {
        let words: Vec<&Vec<i8>> = all.iter().filter(|w| w.len() == len).collect();
        let (found, bad): (usize, Vec<Vec<i8>>) = words
            .par_iter()
            .filter(|raw| matches!(g.delta_power(&to_word(raw)), Some(n) if n != 0 && n.abs() <= 2))
            .fold(
                || (0, Vec::new()),
                |(n, mut bad), raw| {
                    if !has_delta_subword(raw, 3) {
                        bad.push((*raw).clone());
                    }
                    (n + 1, bad)
                },
            )
            .reduce(|| (0, Vec::new()), |(a, mut x), (b, y)| {
                x.extend(y);
                (a + b, x)
            });
        assert!(bad.is_empty(), "length {len}: {:?}", &bad[..bad.len().min(5)]);
        hits += found;
    }
    assert!(hits > 0);
}

#[test]
fn oracle_subword_matches_library() {
    for raw in reduced_words_up_to(8) {
        assert_eq!(has_delta_subword(&raw, 3), to_word(&raw).contains_delta_subword(3), "{raw:?}");
    }
}

/// Brute force: no word with fewer than `(m-2)|n|` syllables represents `Δ^n`.
fn brute_force_delta_bound(m: u32, n: i64, cap: i64) {
    let g = DihedralGroup::new(m).unwrap();
    let target = g.normal_form(&g.delta_word().pow(n));
    let bound = (i64::from(m) - 2) * n.abs();
    for k in 0..bound as usize {
        for w in syllable_words(k, cap) {
            assert_ne!(g.normal_form(&w), target, "m={m} n={n}: {w}");
        }
    }
}

#[test]
fn delta_lower_bound_brute_force() {
    for (m, n) in [(3, 1), (3, -1), (3, 2), (3, -3), (4, 1), (4, -2), (5, 1), (5, -1)] {
        brute_force_delta_bound(m, n, 6);
    }
}

#[test]
fn delta_lower_bound_capped_search() {
    for m in [3u32, 4, 5] {
        let g = DihedralGroup::new(m).unwrap();
        let search = SyllableSearch::new(g, SearchCaps { exponent: 6, depth: 8 });
        for n in -3i64..=3 {
            let w: Word = g.delta_word().pow(n);
            let form = g.normal_form(&w);
            let bound = (i64::from(m) - 2) * n.abs();
            if let Some(s) = search.search(&form, 0) {
                assert!(s as i64 >= bound, "m={m} n={n}: found {s}");
            }
            assert!(search.bounds(&w).lower as i64 >= bound);
        }
    }
}
