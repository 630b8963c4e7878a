//! The two-step rewriting procedure, kept stage by stage so intermediate words can be shown.
//!
//! Step 1 removes the left-most letter-level `Δ_x^{±1}` and pushes it to the right through
//! the tail (`v_1 Δ^{±1} v_2 ↦ v_1 ṽ_2 Δ^{±1}`). Step 2 replaces the left-most negative
//! alternating block of length `k` by the positive word `(z̄, z; m - k)` and pushes the
//! resulting `Δ^{-1}` right.

use std::fmt;

use serde::Serialize;

use super::{DihedralGroup, GarsideForm};
use crate::freeword::{Letter, SignedLetter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Step {
    RemoveDelta,
    InvertBlock,
}

/// One application of a rewrite rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteEvent {
    pub step: Step,
    /// Letter position where the rewritten subword started.
    pub position: usize,
    /// `x` in the `Δ_x^{±1}` that was moved to the right.
    pub delta_letter: Letter,
    pub positive: bool,
}

/// The word and accumulated `Δ` exponent after a phase of one step ran to exhaustion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStage {
    pub step: Step,
    pub word: Word,
    pub delta_exp: i64,
}

impl fmt::Display for TraceStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = render_delta_power(self.delta_exp);
        match (self.word.is_identity(), d.is_empty()) {
            (true, true) => write!(f, "1"),
            (true, false) => write!(f, "{d}"),
            (false, true) => write!(f, "{}", self.word),
            (false, false) => write!(f, "{} {d}", self.word),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub stages: Vec<TraceStage>,
    pub events: Vec<RewriteEvent>,
    pub form: GarsideForm,
}

/// `Δ^n` as alternating labels with `Δ_a` rightmost: `Δ_b Δ_a` for 2, `Δ_a Δ_b Δ_a` for 3.
pub fn render_delta_power(n: i64) -> String {
    let k = n.unsigned_abs() as usize;
    let suffix = if n < 0 { "^-1" } else { "" };
    (0..k)
        .map(|j| {
            let l = if (k - 1 - j) % 2 == 0 { 'a' } else { 'b' };
            format!("Δ_{l}{suffix}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn free_reduce(letters: Vec<SignedLetter>) -> Vec<SignedLetter> {
    let mut out: Vec<SignedLetter> = Vec::with_capacity(letters.len());
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn tilde_letters(m: u32, letters: &[SignedLetter]) -> impl Iterator<Item = SignedLetter> + '_ {
    letters.iter().map(move |l| SignedLetter::new(l.letter.tilde_pow(m, 1), l.positive))
}

fn find_delta(m: usize, letters: &[SignedLetter]) -> Option<usize> {
    if letters.len() < m {
        return None;
    }
    (0..=letters.len() - m).find(|&p| {
        let win = &letters[p..p + m];
        win.iter().all(|l| l.positive == win[0].positive)
            && win.windows(2).all(|q| q[0].letter != q[1].letter)
    })
}

impl DihedralGroup {
    /// Runs the staged rewriting on `u`, recording each phase. The final form always agrees
    /// with [`DihedralGroup::normal_form`].
    pub fn staged_trace(&self, u: &Word) -> Trace {
        let m = self.m();
        let mu = m as usize;
        let mut letters: Vec<SignedLetter> = u.letters().collect();
        let mut n: i64 = 0;
        let mut stages = Vec::new();
        let mut events = Vec::new();
        loop {
            let mut changed = false;
            while let Some(p) = find_delta(mu, &letters) {
                let positive = letters[p].positive;
                // Δ_x^{-1} = x_m^{-1} ⋯ x_1^{-1} reads backwards from its last letter.
                let delta_letter =
                    if positive { letters[p].letter } else { letters[p + mu - 1].letter };
                events.push(RewriteEvent { step: Step::RemoveDelta, position: p, delta_letter, positive });
                let mut next: Vec<SignedLetter> = letters[..p].to_vec();
                next.extend(tilde_letters(m, &letters[p + mu..]));
                letters = free_reduce(next);
                n += if positive { 1 } else { -1 };
                changed = true;
            }
            if changed {
                stages.push(TraceStage {
                    step: Step::RemoveDelta,
                    word: Word::from_letters(letters.iter().copied()),
                    delta_exp: n,
                });
            }
            let mut inverted = false;
            while let Some(p) = letters.iter().position(|l| !l.positive) {
                let mut k = 1;
                while p + k < letters.len()
                    && k < mu - 1
                    && !letters[p + k].positive
                    && letters[p + k].letter != letters[p + k - 1].letter
                {
                    k += 1;
                }
                let z = letters[p].letter;
                // block = (z̄, z; m-k) · Δ_x^{-1} with x the block's last letter, freely.
                let delta_letter = letters[p + k - 1].letter;
                events.push(RewriteEvent {
                    step: Step::InvertBlock,
                    position: p,
                    delta_letter,
                    positive: false,
                });
                let mut next: Vec<SignedLetter> = letters[..p].to_vec();
                next.extend((0..mu - k).map(|i| SignedLetter::pos(z.other().alternate(i))));
                next.extend(tilde_letters(m, &letters[p + k..]));
                letters = free_reduce(next);
                n -= 1;
                inverted = true;
            }
            if inverted {
                stages.push(TraceStage {
                    step: Step::InvertBlock,
                    word: Word::from_letters(letters.iter().copied()),
                    delta_exp: n,
                });
            }
            if find_delta(mu, &letters).is_none() {
                break;
            }
        }
        let mut form = self.normal_form(&Word::from_letters(letters.iter().copied()));
        form.delta_exp += n;
        Trace { stages, events, form }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeword::parse;
    use proptest::prelude::*;

    #[test]
    fn worked_example_stages() {
        let g = DihedralGroup::new(3).unwrap();
        let t = g.staged_trace(&parse("a b a^2 b^-1 a^-1 b a b a^2 b^4 a b").unwrap());
        assert_eq!(t.stages.len(), 2);
        assert_eq!(t.stages[0].to_string(), "b a^-1 b^-1 a^2 b^3 Δ_a Δ_b Δ_a");
        assert_eq!(t.stages[1].to_string(), "b^4 a^3 Δ_b Δ_a");
        assert_eq!(t.form, g.normal_form(&parse("a b a^2 b^-1 a^-1 b a b a^2 b^4 a b").unwrap()));
        let inv = t.events.iter().find(|e| e.step == Step::InvertBlock).unwrap();
        // block a^-1 b^-1 ends with b
        assert_eq!(inv.delta_letter, Letter::B);
    }

    #[test]
    fn delta_rendering() {
        assert_eq!(render_delta_power(0), "");
        assert_eq!(render_delta_power(1), "Δ_a");
        assert_eq!(render_delta_power(2), "Δ_b Δ_a");
        assert_eq!(render_delta_power(-2), "Δ_b^-1 Δ_a^-1");
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((prop::bool::ANY, -3i64..=3), 0..9).prop_map(|v| {
            Word::from_syllables(
                v.into_iter().map(|(b, e)| (if b { Letter::A } else { Letter::B }, e)),
            )
        })
    }

    proptest! {
        #[test]
        fn trace_agrees_with_fast_form(u in arb_word(), m in 3u32..7) {
            let g = DihedralGroup::new(m).unwrap();
            let t = g.staged_trace(&u);
            prop_assert_eq!(t.form, g.normal_form(&u));
            if let Some(last) = t.stages.last() {
                prop_assert!(last.word.letters().all(|l| l.positive));
            }
        }

        #[test]
        fn inverted_block_identity_is_free(k in 1usize..6, m in 3u32..8, start_a in prop::bool::ANY) {
            prop_assume!(k < m as usize);
            let z = if start_a { Letter::A } else { Letter::B };
            let block = Word::from_letters(
                (0..k).map(|i| SignedLetter::new(z.alternate(i), false)),
            );
            let x = z.alternate(k - 1);
            let r = Word::alternating(z.other(), m as usize - k);
            let delta_x = Word::alternating(x, m as usize);
            prop_assert_eq!(r.concat(&delta_x.invert()), block);
        }
    }
}
