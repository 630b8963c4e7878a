//! Freely reduced words over the two generators `a`, `b` of a dihedral Artin group.
//!
//! A [`Word`] is stored as a sequence of syllables `x^k` with adjacent letters distinct,
//! so free reduction is a representation invariant rather than a separate pass.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two standard generators. `A < B` is the tie-breaking order everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    /// Letter at position `i` of the infinite alternating sequence starting at `self`.
    pub fn alternate(self, i: usize) -> Letter {
        if i % 2 == 0 {
            self
        } else {
            self.other()
        }
    }

    /// The letter image under conjugation by `Δ^power` (swap iff `m` odd and `power` odd).
    pub fn tilde_pow(self, m: u32, power: i64) -> Letter {
        if m % 2 == 1 && power.rem_euclid(2) == 1 {
            self.other()
        } else {
            self
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A single signed letter `x^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedLetter {
    pub letter: Letter,
    pub positive: bool,
}

impl SignedLetter {
    pub fn new(letter: Letter, positive: bool) -> Self {
        SignedLetter { letter, positive }
    }

    pub fn pos(letter: Letter) -> Self {
        SignedLetter { letter, positive: true }
    }

    pub fn inverse(self) -> Self {
        SignedLetter { letter: self.letter, positive: !self.positive }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syllable {
    pub letter: Letter,
    pub exp: i64,
}

impl Syllable {
    pub fn new(letter: Letter, exp: i64) -> Self {
        debug_assert!(exp != 0);
        Syllable { letter, exp }
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.letter)
        } else {
            write!(f, "{}^{}", self.letter, self.exp)
        }
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    syllables: Vec<Syllable>,
}

/// Where a letter-level `Δ_x^{±1}` subword was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaOccurrence {
    /// 0-based letter position of the first letter.
    pub position: usize,
    pub positive: bool,
    pub start: Letter,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn generator(letter: Letter) -> Word {
        Word::power(letter, 1)
    }

    pub fn power(letter: Letter, exp: i64) -> Word {
        if exp == 0 {
            Word::identity()
        } else {
            Word { syllables: vec![Syllable::new(letter, exp)] }
        }
    }

    /// Builds a word from arbitrary syllables, reducing as it goes (zero exponents are dropped).
    pub fn from_syllables<I: IntoIterator<Item = (Letter, i64)>>(items: I) -> Word {
        let mut w = Word::identity();
        for (letter, exp) in items {
            w.push(letter, exp);
        }
        w
    }

    pub fn from_letters<I: IntoIterator<Item = SignedLetter>>(letters: I) -> Word {
        Word::from_syllables(
            letters.into_iter().map(|l| (l.letter, if l.positive { 1 } else { -1 })),
        )
    }

    /// Appends `letter^exp` on the right, cascading cancellations.
    pub fn push(&mut self, letter: Letter, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.letter == letter => {
                last.exp += exp;
                if last.exp == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable::new(letter, exp)),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Syllabic length of the word (not of the element it represents).
    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn letters(&self) -> impl Iterator<Item = SignedLetter> + '_ {
        self.syllables.iter().flat_map(|s| {
            let l = SignedLetter::new(s.letter, s.exp > 0);
            std::iter::repeat(l).take(s.exp.unsigned_abs() as usize)
        })
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for s in &other.syllables {
            w.push(s.letter, s.exp);
        }
        w
    }

    pub fn invert(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.letter, -s.exp))
                .collect(),
        }
    }

    /// `u^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Swaps `a` and `b`, keeping exponents.
    pub fn bar(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .map(|s| Syllable::new(s.letter.other(), s.exp))
                .collect(),
        }
    }

    /// `u` for even `m`, `bar(u)` for odd `m`.
    pub fn tilde(&self, m: u32) -> Result<Word> {
        check_finite_coefficient(m)?;
        Ok(if m % 2 == 0 { self.clone() } else { self.bar() })
    }

    /// `(start, other; k)`: `k` unit syllables alternating from `start`.
    pub fn alternating(start: Letter, k: usize) -> Word {
        Word { syllables: (0..k).map(|i| Syllable::new(start.alternate(i), 1)).collect() }
    }

    /// Left-most letter-level occurrence of `Δ_a^{±1}` or `Δ_b^{±1}`.
    ///
    /// Syllables are never expanded: a window of `m` alternating same-sign letters can only
    /// begin at the last letter of a syllable, cross unit syllables, and end at the first
    /// letter of some syllable.
    pub fn find_delta_subword(&self, m: u32) -> Result<Option<DeltaOccurrence>> {
        check_finite_coefficient(m)?;
        let m = m as usize;
        let syl = &self.syllables;
        let mut offset = 0usize;
        for i in 0..syl.len() {
            let len_i = syl[i].exp.unsigned_abs() as usize;
            let start_pos = offset + len_i - 1;
            offset += len_i;
            let positive = syl[i].exp > 0;
            let mut count = 1;
            let mut j = i + 1;
            while count < m && j < syl.len() && (syl[j].exp > 0) == positive {
                count += 1;
                if syl[j].exp.abs() != 1 {
                    break;
                }
                j += 1;
            }
            if count == m {
                // For a negative occurrence the subword is x^{-1} y^{-1} ..., i.e. Δ_z^{-1}
                // where z is the last letter of the window.
                let start = syl[i].letter;
                return Ok(Some(DeltaOccurrence { position: start_pos, positive, start }));
            }
        }
        Ok(None)
    }

    pub fn contains_delta_subword(&self, m: u32) -> bool {
        matches!(self.find_delta_subword(m), Ok(Some(_)))
    }
}

pub(crate) fn check_finite_coefficient(m: u32) -> Result<()> {
    if m < 3 {
        Err(Error::InvalidCoefficient(m))
    } else {
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse(s)
    }
}

/// Parses `token := letter | letter '^' int`, whitespace-separated. `1` and the empty string
/// denote the identity. Tokens may also be juxtaposed without spaces (`aba^-1`).
pub fn parse(text: &str) -> Result<Word> {
    let mut w = Word::identity();
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "1" {
        return Ok(w);
    }
    let chars: Vec<char> = trimmed.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let letter = match c {
            'a' => Letter::A,
            'b' => Letter::B,
            other => return Err(Error::Parse(format!("unknown letter '{other}'"))),
        };
        i += 1;
        let mut exp = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            exp = digits
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("malformed exponent '{digits}'")))?;
            if exp == 0 {
                return Err(Error::Parse("zero exponent".into()));
            }
        }
        w.push(letter, exp);
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        parse(s).unwrap()
    }

    fn syl(items: &[(Letter, i64)]) -> Vec<Syllable> {
        items.iter().map(|&(l, e)| Syllable::new(l, e)).collect()
    }

    use Letter::{A, B};

    #[test]
    fn parse_examples() {
        assert_eq!(w("a b^2 a^-1").syllables(), syl(&[(A, 1), (B, 2), (A, -1)]));
        assert_eq!(w("a a").syllables(), syl(&[(A, 2)]));
        assert_eq!(w("a b b^-1 a").syllables(), syl(&[(A, 2)]));
        assert!(w("").is_identity());
        assert_eq!(w("aba^-1"), w("a b a^-1"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("a^0"), Err(Error::Parse(_))));
        assert!(matches!(parse("c"), Err(Error::Parse(_))));
        assert!(matches!(parse("a^"), Err(Error::Parse(_))));
        assert!(matches!(parse("a^x"), Err(Error::Parse(_))));
    }

    #[test]
    fn concat_examples() {
        assert!(w("a").concat(&w("a^-1")).is_identity());
        assert_eq!(w("a").concat(&w("b")), w("a b"));
        assert_eq!(w("a b^2").concat(&w("b^-2 a^3")).syllables(), syl(&[(A, 4)]));
    }

    #[test]
    fn invert_examples() {
        assert!(Word::identity().invert().is_identity());
        assert_eq!(w("a^2").invert(), w("a^-2"));
        assert_eq!(w("a b^-1").invert(), w("b a^-1"));
    }

    #[test]
    fn bar_and_tilde() {
        assert_eq!(w("a b^2").bar(), w("b a^2"));
        assert!(Word::identity().bar().is_identity());
        assert_eq!(w("a").tilde(3).unwrap(), w("b"));
        assert_eq!(w("a").tilde(4).unwrap(), w("a"));
        assert!(Word::identity().tilde(5).unwrap().is_identity());
        assert!(matches!(w("a").tilde(2), Err(Error::InvalidCoefficient(2))));
    }

    #[test]
    fn alternating_words() {
        assert_eq!(Word::alternating(A, 3), w("a b a"));
        assert_eq!(Word::alternating(B, 2), w("b a"));
        assert!(Word::alternating(A, 0).is_identity());
    }

    #[test]
    fn delta_subword_search() {
        let u = w("a b a^2 b^-1 a^-1 b a b a^2 b^4 a b");
        assert_eq!(
            u.find_delta_subword(3).unwrap(),
            Some(DeltaOccurrence { position: 0, positive: true, start: A })
        );
        assert_eq!(w("a b").find_delta_subword(3).unwrap(), None);
        assert_eq!(
            w("a^-1 b^-1 a^-1").find_delta_subword(3).unwrap(),
            Some(DeltaOccurrence { position: 0, positive: false, start: A })
        );
        // window must end at the first letter of a long syllable
        assert_eq!(
            w("b^5 a b^7").find_delta_subword(3).unwrap(),
            Some(DeltaOccurrence { position: 4, positive: true, start: B })
        );
        assert_eq!(w("a b^2 a").find_delta_subword(3).unwrap(), None);
        assert_eq!(w("a b a^-1 b").find_delta_subword(3).unwrap(), None);
    }

    #[test]
    fn delta_search_on_huge_exponent_is_cheap() {
        let u = Word::from_syllables([(A, 1_000_000_000), (B, 1), (A, 1), (B, 3)]);
        let occ = u.find_delta_subword(4).unwrap().unwrap();
        assert_eq!(occ.position, 999_999_999);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec((prop::bool::ANY, -4i64..=4), 0..12).prop_map(|v| {
            Word::from_syllables(v.into_iter().map(|(b, e)| (if b { A } else { B }, e)))
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(u in arb_word()) {
            prop_assert_eq!(parse(&u.to_string()).unwrap(), u);
        }

        #[test]
        fn reduced_invariant_and_group_laws(u in arb_word(), v in arb_word(), x in arb_word()) {
            let uv = u.concat(&v);
            for pair in uv.syllables().windows(2) {
                prop_assert_ne!(pair[0].letter, pair[1].letter);
            }
            prop_assert!(uv.syllable_count() <= u.syllable_count() + v.syllable_count());
            prop_assert_eq!(uv.concat(&x), u.concat(&v.concat(&x)));
            prop_assert!(u.concat(&u.invert()).is_identity());
            prop_assert_eq!(uv.invert(), v.invert().concat(&u.invert()));
            prop_assert_eq!(u.bar().bar(), u.clone());
            prop_assert_eq!(u.tilde(5).unwrap().tilde(5).unwrap(), u);
        }

        #[test]
        fn alternating_syllable_count(k in 1usize..20, start in prop::bool::ANY) {
            let s = if start { A } else { B };
            prop_assert_eq!(Word::alternating(s, k).syllable_count(), k);
        }

        #[test]
        fn virtual_search_matches_letter_scan(u in arb_word(), m in 3u32..6) {
            let letters: Vec<SignedLetter> = u.letters().collect();
            let m_us = m as usize;
            let brute = (0..letters.len().saturating_sub(m_us - 1)).find(|&p| {
                let win = &letters[p..p + m_us];
                win.iter().all(|l| l.positive == win[0].positive)
                    && win.windows(2).all(|q| q[0].letter != q[1].letter)
            });
            let found = u.find_delta_subword(m).unwrap();
            prop_assert_eq!(found.map(|o| o.position), brute);
            if let (Some(o), Some(p)) = (found, brute) {
                prop_assert_eq!(o.start, letters[p].letter);
                prop_assert_eq!(o.positive, letters[p].positive);
            }
        }
    }
}
