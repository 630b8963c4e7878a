//! Two-sided bounds on the syllabic length `ℓ_S(g)`: the fewest syllables over all words
//! representing `g`.
//!
//! Lower bounds come from the cone-off distance (`d_T̂(1_•, g·1_•) <= 2ℓ_S(g)`) and from
//! `ℓ_S(Δ^n) >= (m-2)|n|`. Upper bounds come from the input word and a capped
//! meet-in-the-middle search over short words.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{DihedralGroup, GarsideForm, Normalizer};
use crate::coset_tree::{CosetTree, CosetVertex};
use crate::freeword::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchCaps {
    pub exponent: u32,
    pub depth: u32,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps { exponent: 6, depth: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyllabicBounds {
    pub lower: u64,
    pub upper: u64,
    /// Fewest syllables the capped search found, if it found anything.
    pub search_best: Option<u64>,
    pub dhat: u64,
}

impl SyllabicBounds {
    pub fn exact(&self) -> Option<u64> {
        (self.lower == self.upper).then_some(self.lower)
    }
}

/// Forward half of the meet-in-the-middle search, reusable across many queries.
#[derive(Debug, Clone)]
pub struct SyllableSearch {
    group: DihedralGroup,
    caps: SearchCaps,
    /// Fewest syllables of a word ending in `a` / `b` with the given value.
    forward: HashMap<GarsideForm, [u8; 2]>,
}

fn letter_index(l: Letter) -> usize {
    if l == Letter::A {
        0
    } else {
        1
    }
}

fn exponents(cap: u32) -> impl Iterator<Item = i64> {
    let c = cap as i64;
    (1..=c).flat_map(|k| [k, -k])
}

impl SyllableSearch {
    pub fn new(group: DihedralGroup, caps: SearchCaps) -> Self {
        let mut forward = HashMap::new();
        let half = caps.depth.div_ceil(2);
        let root = Normalizer::new(group);
        for first in [Letter::A, Letter::B] {
            Self::grow(&root, first, 1, half, caps.exponent, &mut forward);
        }
        SyllableSearch { group, caps, forward }
    }

    fn grow(
        state: &Normalizer,
        letter: Letter,
        count: u32,
        limit: u32,
        cap: u32,
        table: &mut HashMap<GarsideForm, [u8; 2]>,
    ) {
        if count > limit {
            return;
        }
        for e in exponents(cap) {
            let mut next = state.clone();
            next.mul_syllable(letter, e);
            let entry = table.entry(next.finish()).or_insert([u8::MAX; 2]);
            let slot = &mut entry[letter_index(letter)];
            *slot = (*slot).min(count as u8);
            Self::grow(&next, letter.other(), count + 1, limit, cap, table);
        }
    }

    pub fn caps(&self) -> SearchCaps {
        self.caps
    }

    /// Fewest syllables of a word `w_1·w_2` equal to `g`, with each half inside the caps.
    pub fn search(&self, g: &GarsideForm, stop_at: u64) -> Option<u64> {
        let mut best: Option<u64> = None;
        if g.atoms.is_empty() && g.delta_exp == 0 {
            return Some(0);
        }
        let back = self.caps.depth / 2;
        let start = Normalizer::from_form(self.group, g);
        self.probe(&start, None, 0, &mut best);
        for j2 in 1..=back {
            if best.is_some_and(|b| b <= stop_at || u64::from(j2) > b) {
                break;
            }
            for first in [Letter::A, Letter::B] {
                self.back(&start, first, 1, j2, &mut best);
            }
        }
        best
    }

    /// Enumerates `v` with exactly `target` syllables; `g·v` must equal some forward `w_1`,
    /// so `g = w_1·v^{-1}`.
    fn back(&self, state: &Normalizer, letter: Letter, count: u32, target: u32, best: &mut Option<u64>) {
        for e in exponents(self.caps.exponent) {
            let mut next = state.clone();
            next.mul_syllable(letter, e);
            if count == target {
                self.probe(&next, Some(letter), count, best);
            } else {
                self.back(&next, letter.other(), count + 1, target, best);
            }
        }
    }

    fn probe(&self, state: &Normalizer, last_v: Option<Letter>, j2: u32, best: &mut Option<u64>) {
        let f = state.finish();
        if f.atoms.is_empty() && f.delta_exp == 0 {
            let total = u64::from(j2);
            *best = Some(best.map_or(total, |b| b.min(total)));
            return;
        }
        let Some(entry) = self.forward.get(&f) else { return };
        for l in [Letter::A, Letter::B] {
            let j1 = entry[letter_index(l)];
            if j1 == u8::MAX {
                continue;
            }
            // v^{-1} starts with the last letter of v; equal letters merge into one syllable.
            let merge = u64::from(last_v == Some(l));
            let total = u64::from(j1) + u64::from(j2) - merge;
            *best = Some(best.map_or(total, |b| b.min(total)));
        }
    }

    /// Bounds for the element of `u`.
    pub fn bounds(&self, u: &Word) -> SyllabicBounds {
        let g = self.group;
        let form = g.normal_form(u);
        let tree = CosetTree::new(g);
        let dhat = tree.dhat(&CosetVertex::base(), &CosetVertex::of(&form)).upper;
        let trivial = form.atoms.is_empty() && form.delta_exp == 0;
        let delta_bound = (i64::from(g.m()) - 2) * form.delta_exp.abs()
            - form.positive_syllables() as i64;
        let lower = [u64::from(!trivial), dhat.div_ceil(2), delta_bound.max(0) as u64]
            .into_iter()
            .max()
            .unwrap_or(0);
        let mut upper = (u.syllable_count() as u64).min(form.to_word(g.m()).syllable_count() as u64);
        let search_best = if lower < upper { self.search(&form, lower) } else { None };
        if let Some(s) = search_best {
            upper = upper.min(s);
        }
        SyllabicBounds { lower, upper, search_best, dhat }
    }
}

impl DihedralGroup {
    pub fn syllabic_bounds(&self, u: &Word, caps: SearchCaps) -> SyllabicBounds {
        SyllableSearch::new(*self, caps).bounds(u)
    }
}
