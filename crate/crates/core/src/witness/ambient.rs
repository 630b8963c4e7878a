use std::fmt;

use serde::Serialize;

/// A freely reduced word in the generators of `A_Γ`, by vertex index. Never rewritten by
/// Artin relations.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AmbientWord {
    syllables: Vec<(usize, i64)>,
}

impl AmbientWord {
    pub fn identity() -> Self {
        AmbientWord::default()
    }

    /// The positive word spelling the given generators in order.
    pub fn positive(letters: &[usize]) -> Self {
        let mut w = AmbientWord::identity();
        for &l in letters {
            w.push(l, 1);
        }
        w
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.0 == g => {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn concat(&self, other: &AmbientWord) -> AmbientWord {
        let mut w = self.clone();
        for &(g, e) in &other.syllables {
            w.push(g, e);
        }
        w
    }

    pub fn invert(&self) -> AmbientWord {
        AmbientWord { syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    /// `self^{-1}·other`.
    pub fn relative(&self, other: &AmbientWord) -> AmbientWord {
        self.invert().concat(other)
    }

    /// Every letter lies in `allowed`. This is the syntactic membership test for the
    /// subgroup those generators span.
    pub fn uses_only(&self, allowed: &[usize]) -> bool {
        self.syllables.iter().all(|(g, _)| allowed.contains(g))
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> AmbientDisplay<'a> {
        AmbientDisplay { word: self, names }
    }
}

pub struct AmbientDisplay<'a> {
    word: &'a AmbientWord,
    names: &'a [String],
}

/// Juxtaposed when every name is one character, space separated otherwise.
impl fmt::Display for AmbientDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            return f.write_str("1");
        }
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) { "" } else { " " };
        let parts: Vec<String> = self
            .word
            .syllables
            .iter()
            .map(|&(g, e)| match e {
                1 => self.names[g].clone(),
                _ => format!("{}^{e}", self.names[g]),
            })
            .collect();
        f.write_str(&parts.join(sep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_membership() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let c = AmbientWord::positive(&[2]);
        let cbc = AmbientWord::positive(&[2, 1, 2]);
        assert_eq!(c.relative(&cbc).display(&names).to_string(), "bc");
        assert!(c.relative(&cbc).uses_only(&[1, 2]));
        assert!(!c.relative(&cbc).uses_only(&[1]));
        assert!(cbc.relative(&cbc).is_identity());
        assert_eq!(AmbientWord::positive(&[0, 0]).display(&names).to_string(), "a^2");
        assert_eq!(AmbientWord::identity().display(&names).to_string(), "1");
    }
}
