use serde::Serialize;

use super::{DihedralGroup, GarsideForm, Normalizer};
use crate::coset_tree::CosetTree;
use crate::freeword::{Letter, Word};

/// How an element acts on the cone-off tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ElementClass {
    /// `g^power = Δ^delta_exp`, central.
    CentralPower { power: u64, delta_exp: i64 },
    /// `g = h·s^exponent·Δ^delta_exp·h^{-1}` with `Δ^delta_exp` central.
    ConjGenPower { h: Word, s: Letter, exponent: i64, delta_exp: i64 },
    Loxodromic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest power tried in the central-power test.
    pub central_bound: u64,
}

impl ClassifyOptions {
    /// `2·m!`, saturating.
    pub fn for_group(g: DihedralGroup) -> Self {
        let mut f: u64 = 2;
        for k in 2..=u64::from(g.m()) {
            f = f.saturating_mul(k);
        }
        ClassifyOptions { central_bound: f }
    }
}

impl DihedralGroup {
    pub fn classify_element(&self, u: &Word) -> ElementClass {
        self.classify_with(u, ClassifyOptions::for_group(*self))
    }

    pub fn classify_with(&self, u: &Word, opts: ClassifyOptions) -> ElementClass {
        let f = self.normal_form(u);
        let tree = CosetTree::new(*self);
        if tree.translation_length(&f) == 0 {
            // An elliptic element fixes a vertex of T; some power below 2m fixes an edge and
            // so is central. The loop bound is the configured one.
            let mut acc = Normalizer::new(*self);
            for k in 1..=opts.central_bound {
                acc.mul_form(&f);
                let p = acc.finish();
                if self.is_central_form(&p) {
                    return ElementClass::CentralPower { power: k, delta_exp: p.delta_exp };
                }
            }
            return ElementClass::Loxodromic;
        }
        let Ok(p) = tree.axis_point(&f) else { return ElementClass::Loxodromic };
        let h = p.form();
        let conj = self.multiply(&self.multiply(&self.inverse(&h), &f), &h);
        let central = |q: i64| self.is_central_form(&GarsideForm { atoms: vec![], delta_exp: q });
        let found = single_syllable(&conj)
            .map(|(s, k)| (s, k, conj.delta_exp))
            .or_else(|| {
                let inv = self.inverse(&conj);
                single_syllable(&inv).map(|(s, k)| (s, -k, -inv.delta_exp))
            });
        match found {
            Some((s, exponent, delta_exp)) if central(delta_exp) => {
                ElementClass::ConjGenPower { h: h.positive_word(), s, exponent, delta_exp }
            }
            _ => ElementClass::Loxodromic,
        }
    }
}

/// `s^k` when the atom product is a single positive syllable.
fn single_syllable(f: &GarsideForm) -> Option<(Letter, i64)> {
    let first = f.atoms.first()?;
    if f.atoms.iter().all(|a| a.len == 1 && a.start == first.start) {
        Some((first.start, f.atoms.len() as i64))
    } else {
        None
    }
}
