//! Garside normal forms in the dihedral Artin group `A_ab` with coefficient `3 <= m < ∞`.
//!
//! Every element is uniquely `u_1 ⋯ u_n · Δ^N` where the `u_i` are atoms (strict positive
//! alternating subwords of `Δ`) and the last letter of `u_i` is the first letter of `u_{i+1}`.
//! Equivalently the atom product is a positive word with no alternating run of length `m`.
//!
//! ```
//! use artin_core::dihedral::DihedralGroup;
//! use artin_core::freeword::parse;
//!
//! let g = DihedralGroup::new(3).unwrap();
//! let nf = g.normal_form(&parse("a^-1").unwrap());
//! assert_eq!(nf.to_string(), "ba·Δ^-1");
//! ```

mod classify;
mod growth;
mod syllabic;
mod trace;

pub use classify::{ClassifyOptions, ElementClass};
pub use growth::{lower_slope, GrowthRow};
pub use syllabic::{SearchCaps, SyllabicBounds, SyllableSearch};
pub use trace::{render_delta_power, RewriteEvent, Step, Trace, TraceStage};

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::freeword::{check_finite_coefficient, Letter, SignedLetter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralGroup {
    m: u32,
}

/// `(start, other; len)` with `1 <= len <= m - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Atom {
    pub start: Letter,
    pub len: u32,
}

impl Atom {
    pub fn last(&self) -> Letter {
        self.start.alternate(self.len as usize - 1)
    }

    pub fn to_word(&self) -> Word {
        Word::alternating(self.start, self.len as usize)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len as usize {
            write!(f, "{}", self.start.alternate(i))?;
        }
        Ok(())
    }
}

/// Canonical form `atoms · Δ^delta_exp`. Structural equality is group equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GarsideForm {
    pub atoms: Vec<Atom>,
    pub delta_exp: i64,
}

impl GarsideForm {
    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_delta_power(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The atom product `g_•` as a positive word.
    pub fn positive_word(&self) -> Word {
        let mut w = Word::identity();
        for a in &self.atoms {
            w = w.concat(&a.to_word());
        }
        w
    }

    /// A word representing the element: atom product followed by `Δ_a^N`.
    pub fn to_word(&self, m: u32) -> Word {
        let delta = Word::alternating(Letter::A, m as usize);
        self.positive_word().concat(&delta.pow(self.delta_exp))
    }

    /// Syllable count of the atom product.
    pub fn positive_syllables(&self) -> usize {
        self.positive_word().syllable_count()
    }
}

impl fmt::Display for GarsideForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        match self.delta_exp {
            0 if parts.is_empty() => parts.push("1".into()),
            0 => {}
            1 => parts.push("Δ".into()),
            n => parts.push(format!("Δ^{n}")),
        }
        write!(f, "{}", parts.join("·"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct StackSyllable {
    letter: Letter,
    exp: u64,
    /// Length of the alternating run ending at this syllable's last letter.
    run: u32,
}

/// Incremental right multiplication `P·Δ^N ↦ P·Δ^N·x^{±1}`.
///
/// `P` is kept as a stack of positive syllables, each remembering the alternating run that
/// ends on it, so a completed `Δ` is detected and popped in `O(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalizer {
    m: u32,
    stack: Vec<StackSyllable>,
    delta_exp: i64,
}

impl Normalizer {
    pub fn new(group: DihedralGroup) -> Self {
        Normalizer { m: group.m, stack: Vec::new(), delta_exp: 0 }
    }

    pub fn from_form(group: DihedralGroup, form: &GarsideForm) -> Self {
        let mut n = Normalizer::new(group);
        n.mul_word(&form.positive_word());
        n.delta_exp = form.delta_exp;
        n
    }

    fn last_run(&self) -> u32 {
        self.stack.last().map_or(0, |s| s.run)
    }

    fn recompute_top_run(&mut self) {
        let len = self.stack.len();
        if len == 0 {
            return;
        }
        let run = if self.stack[len - 1].exp >= 2 {
            1
        } else if len >= 2 {
            self.stack[len - 2].run + 1
        } else {
            1
        };
        self.stack[len - 1].run = run;
    }

    /// Appends one positive letter to `P`, popping a completed `Δ` into the exponent.
    fn push_letter(&mut self, z: Letter) {
        if let Some(top) = self.stack.last_mut() {
            if top.letter == z {
                top.exp += 1;
                top.run = 1;
                return;
            }
        }
        let run = self.last_run() + 1;
        if run < self.m {
            self.stack.push(StackSyllable { letter: z, exp: 1, run });
            return;
        }
        let mut remove = self.m - 1;
        while remove > 0 {
            let top = self.stack.last_mut().expect("run implies letters");
            if top.exp == 1 {
                self.stack.pop();
            } else {
                top.exp -= 1;
                self.recompute_top_run();
            }
            remove -= 1;
        }
        self.delta_exp += 1;
    }

    pub fn mul_letter(&mut self, l: SignedLetter) {
        let z = l.letter.tilde_pow(self.m, self.delta_exp);
        if l.positive {
            self.push_letter(z);
            return;
        }
        // z^{-1} = (z̄, z; m-1)·Δ^{-1}
        self.delta_exp -= 1;
        let base = self.delta_exp;
        let start = z.other();
        for i in 0..(self.m - 1) as usize {
            let c = start.alternate(i).tilde_pow(self.m, self.delta_exp - base);
            self.push_letter(c);
        }
    }

    pub fn mul_syllable(&mut self, letter: Letter, exp: i64) {
        if exp < 0 {
            for _ in 0..exp.unsigned_abs() {
                self.mul_letter(SignedLetter::new(letter, false));
            }
            return;
        }
        let mut k = exp as u64;
        while k > 0 {
            let z = letter.tilde_pow(self.m, self.delta_exp);
            if let Some(top) = self.stack.last_mut() {
                if top.letter == z {
                    top.exp += k;
                    top.run = 1;
                    return;
                }
            }
            self.push_letter(z);
            k -= 1;
        }
    }

    pub fn mul_word(&mut self, w: &Word) {
        for s in w.syllables() {
            self.mul_syllable(s.letter, s.exp);
        }
    }

    pub fn mul_form(&mut self, f: &GarsideForm) {
        for a in &f.atoms {
            for i in 0..a.len as usize {
                self.mul_letter(SignedLetter::pos(a.start.alternate(i)));
            }
        }
        self.delta_exp += f.delta_exp;
    }

    pub fn delta_exp(&self) -> i64 {
        self.delta_exp
    }

    pub fn finish(&self) -> GarsideForm {
        let mut atoms = Vec::new();
        let mut cur: Option<Atom> = None;
        for s in &self.stack {
            match cur.as_mut() {
                Some(a) => a.len += 1,
                None => cur = Some(Atom { start: s.letter, len: 1 }),
            }
            for _ in 1..s.exp {
                atoms.push(cur.take().expect("current atom"));
                cur = Some(Atom { start: s.letter, len: 1 });
            }
        }
        atoms.extend(cur);
        GarsideForm { atoms, delta_exp: self.delta_exp }
    }
}

impl DihedralGroup {
    pub fn new(m: u32) -> Result<Self> {
        check_finite_coefficient(m)?;
        Ok(DihedralGroup { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `Δ_a = (a, b; m)`.
    pub fn delta_word(&self) -> Word {
        Word::alternating(Letter::A, self.m as usize)
    }

    pub fn normal_form(&self, u: &Word) -> GarsideForm {
        let mut n = Normalizer::new(*self);
        n.mul_word(u);
        n.finish()
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.normal_form(u) == self.normal_form(v)
    }

    /// `ũ`, satisfying `Δ·u ≡ ũ·Δ`.
    pub fn conj_by_delta(&self, u: &Word) -> Word {
        if self.m % 2 == 0 {
            u.clone()
        } else {
            u.bar()
        }
    }

    /// `⟨Δ⟩` for even `m`, `⟨Δ²⟩` for odd `m`.
    pub fn is_central_form(&self, f: &GarsideForm) -> bool {
        f.atoms.is_empty() && (self.m % 2 == 0 || f.delta_exp % 2 == 0)
    }

    pub fn is_central(&self, u: &Word) -> bool {
        self.is_central_form(&self.normal_form(u))
    }

    pub fn delta_power(&self, u: &Word) -> Option<i64> {
        let f = self.normal_form(u);
        f.atoms.is_empty().then_some(f.delta_exp)
    }

    pub fn multiply(&self, x: &GarsideForm, y: &GarsideForm) -> GarsideForm {
        let mut n = Normalizer::from_form(*self, x);
        n.mul_form(y);
        n.finish()
    }

    pub fn inverse(&self, x: &GarsideForm) -> GarsideForm {
        self.normal_form(&x.to_word(self.m).invert())
    }

    /// `x^{-1}·y` in normal form.
    pub fn left_quotient(&self, x: &GarsideForm, y: &GarsideForm) -> GarsideForm {
        self.multiply(&self.inverse(x), y)
    }

    /// A canonical element of the coset `g⟨s⟩`.
    ///
    /// Right-multiplying by `s` eventually only grows a trailing `s̃^N` syllable; the
    /// representative is that stable form with the syllable removed.
    pub fn coset_representative(&self, g: &GarsideForm, s: Letter) -> GarsideForm {
        let mut n = Normalizer::from_form(*self, g);
        loop {
            let z = s.tilde_pow(self.m, n.delta_exp);
            if n.stack.last().is_some_and(|top| top.letter == z) {
                n.stack.pop();
                return n.finish();
            }
            n.mul_letter(SignedLetter::pos(s));
        }
    }

    pub fn power(&self, x: &GarsideForm, n: i64) -> GarsideForm {
        let base = if n < 0 { self.inverse(x) } else { x.clone() };
        let mut acc = Normalizer::new(*self);
        for _ in 0..n.unsigned_abs() {
            acc.mul_form(&base);
        }
        acc.finish()
    }
}
