use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use super::ambient::AmbientWord;
use crate::deligne::{Coefficient, DefiningGraph, Dimension};
use crate::error::{Error, Refusal, Result};

/// Coefficient patterns of the witness construction.
///
/// * `S1`: `m_ab, m_ac, m_bc ∈ {3, 4, ...}`.
/// * `S2`: `m_ab >= 3`, and either `m_ac = 2, m_bc ∈ {5, ..., ∞}`, or `m_bc = ∞` with any
///   finite `m_ac`. `m_bc = ∞` needs `Γ^{bc}` to be 2-dimensional.
/// * `S3`: `m_ac = 2`, `m_ab = m_bc = 4`.
/// * `S4`: an induced 4-cycle `b–c–d–a–b` with `m_bc = m_cd = m_da = 2`, `m_ab >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Situation {
    S1,
    S2,
    S3,
    S4,
}

impl fmt::Display for Situation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub situation: Situation,
    /// Vertex indices of `a, b, c` and, in `S4`, `d`.
    pub generators: Vec<usize>,
    pub names: Vec<String>,
    /// `m_ab, m_ac, m_bc`, then `m_cd, m_da` in `S4`.
    pub coefficients: Vec<Coefficient>,
    /// `m_bc = ∞`: the construction runs in the complex augmented at `b, c`.
    pub augmented: bool,
}

impl CaseResult {
    pub fn a(&self) -> usize {
        self.generators[0]
    }

    pub fn b(&self) -> usize {
        self.generators[1]
    }

    pub fn c(&self) -> usize {
        self.generators[2]
    }

    pub fn d(&self) -> Option<usize> {
        self.generators.get(3).copied()
    }

    /// `m_ab`, always finite and at least 3.
    pub fn m_ab(&self) -> u32 {
        self.coefficients[0].finite().expect("m_ab is finite")
    }

    /// Re-checks the defining conditions of the situation against `graph`.
    pub fn verify(&self, graph: &DefiningGraph) -> bool {
        let g = &self.generators;
        let m = |i: usize, j: usize| graph.coefficient(g[i], g[j]);
        let at_least = |c: Coefficient, k: u32| c.finite().is_some_and(|x| x >= k);
        let fin2 = Coefficient::Finite(2);
        let distinct = {
            let mut s = g.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == g.len()
        };
        if !distinct || !at_least(m(0, 1), 3) {
            return false;
        }
        let sum_ok = m(0, 1).reciprocal() + m(0, 2).reciprocal() + m(1, 2).reciprocal()
            <= Ratio::from_integer(1);
        match self.situation {
            Situation::S1 => g.len() == 3 && at_least(m(0, 2), 3) && at_least(m(1, 2), 3),
            Situation::S2 => {
                let bc_ok = if m(1, 2).is_finite() {
                    m(0, 2) == fin2 && at_least(m(1, 2), 5)
                } else {
                    graph.augment(g[1], g[2]).is_two_dimensional()
                };
                g.len() == 3 && sum_ok && at_least(m(0, 2), 2) && bc_ok
            }
            Situation::S3 => {
                g.len() == 3
                    && m(0, 2) == fin2
                    && m(0, 1) == Coefficient::Finite(4)
                    && m(1, 2) == Coefficient::Finite(4)
            }
            Situation::S4 => {
                g.len() == 4
                    && m(1, 2) == fin2
                    && m(2, 3) == fin2
                    && m(3, 0) == fin2
                    && !m(0, 2).is_finite()
                    && !m(1, 3).is_finite()
            }
        }
    }
}

/// Admissibility checks, each refusal reported distinctly.
pub fn admissible(graph: &DefiningGraph) -> Result<()> {
    if graph.rank() < 3 {
        return Err(Error::Refused(Refusal::RankTooSmall));
    }
    if !graph.is_connected() {
        return Err(Error::Refused(Refusal::Disconnected));
    }
    if graph.is_right_angled() {
        return Err(Error::Refused(Refusal::RightAngled));
    }
    if graph.is_reducible() {
        return Err(Error::Refused(Refusal::Reducible));
    }
    match graph.dimension() {
        Dimension::Two => {}
        Dimension::Discrete => return Err(Error::Refused(Refusal::NotTwoDimensional)),
        Dimension::Spherical { triangle, .. } => return Err(Error::NotTwoDimensional(triangle)),
    }
    Ok(())
}

fn name_order(graph: &DefiningGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..graph.rank()).collect();
    order.sort_by(|&x, &y| graph.name(x).cmp(graph.name(y)));
    order
}

fn triples(order: &[usize]) -> impl Iterator<Item = [usize; 3]> + '_ {
    order.iter().flat_map(move |&a| {
        order.iter().flat_map(move |&b| {
            order
                .iter()
                .filter(move |&&c| a != b && b != c && a != c)
                .map(move |&c| [a, b, c])
        })
    })
}

pub fn classify_cases(graph: &DefiningGraph) -> Result<CaseResult> {
    admissible(graph)?;
    let order = name_order(graph);
    let m = |x: usize, y: usize| graph.coefficient(x, y);
    let fin = |c: Coefficient| c.finite().unwrap_or(u32::MAX);
    let at_least = |c: Coefficient, k: u32| c.finite().is_some_and(|x| x >= k);
    let result = |situation, generators: Vec<usize>| {
        let g = &generators;
        let mut coefficients = vec![m(g[0], g[1]), m(g[0], g[2]), m(g[1], g[2])];
        if let Some(&d) = g.get(3) {
            coefficients.extend([m(g[2], d), m(d, g[0])]);
        }
        CaseResult {
            situation,
            names: g.iter().map(|&i| graph.name(i).to_string()).collect(),
            augmented: !m(g[1], g[2]).is_finite(),
            generators,
            coefficients,
        }
    };
    let s1 = triples(&order).find(|&[a, b, c]| {
        at_least(m(a, b), 3) && at_least(m(a, c), 3) && at_least(m(b, c), 3)
    });
    if let Some(t) = s1 {
        return Ok(result(Situation::S1, t.to_vec()));
    }
    let finite_s2_s3 = triples(&order).find_map(|[a, b, c]| {
        if !at_least(m(a, b), 3) || m(a, c) != Coefficient::Finite(2) || !m(b, c).is_finite() {
            return None;
        }
        match (fin(m(a, b)), fin(m(b, c))) {
            (_, bc) if bc >= 5 => Some(result(Situation::S2, vec![a, b, c])),
            (4, 4) => Some(result(Situation::S3, vec![a, b, c])),
            _ => None,
        }
    });
    if let Some(r) = finite_s2_s3 {
        return Ok(r);
    }
    let augmented = triples(&order).find(|&[a, b, c]| {
        at_least(m(a, b), 3)
            && m(a, c).is_finite()
            && !m(b, c).is_finite()
            && graph.augment(b, c).is_two_dimensional()
    });
    if let Some(t) = augmented {
        return Ok(result(Situation::S2, t.to_vec()));
    }
    for [a, b, c] in triples(&order) {
        for &d in &order {
            if [a, b, c].contains(&d) {
                continue;
            }
            let cycle = at_least(m(a, b), 3)
                && m(b, c) == Coefficient::Finite(2)
                && m(c, d) == Coefficient::Finite(2)
                && m(d, a) == Coefficient::Finite(2)
                && !m(a, c).is_finite()
                && !m(b, d).is_finite();
            if cycle {
                return Ok(result(Situation::S4, vec![a, b, c, d]));
            }
        }
    }
    Err(Error::Inconclusive("no witness situation applies".into()))
}

/// `c`, `cbc`, `cbcabc`, `cd` for `S1`–`S4`.
pub fn witness_element(case: &CaseResult) -> AmbientWord {
    let (a, b, c) = (case.a(), case.b(), case.c());
    match case.situation {
        Situation::S1 => AmbientWord::positive(&[c]),
        Situation::S2 => AmbientWord::positive(&[c, b, c]),
        Situation::S3 => AmbientWord::positive(&[c, b, c, a, b, c]),
        Situation::S4 => AmbientWord::positive(&[c, case.d().expect("S4 has d")]),
    }
}

/// Translates of the tile making up `P`, in order, ending with the witness.
pub fn translates(case: &CaseResult) -> Vec<AmbientWord> {
    let (a, b, c) = (case.a(), case.b(), case.c());
    let spell = |s: &[usize]| AmbientWord::positive(s);
    match case.situation {
        Situation::S1 => vec![spell(&[]), spell(&[c])],
        Situation::S2 => vec![spell(&[]), spell(&[c]), spell(&[c, b]), spell(&[c, b, c])],
        Situation::S3 => vec![
            spell(&[]),
            spell(&[c]),
            spell(&[c, b]),
            spell(&[c, b, c]),
            spell(&[c, b, a]),
            spell(&[c, b, c, a]),
            spell(&[c, b, c, a, b]),
            spell(&[c, b, c, a, b, c]),
        ],
        Situation::S4 => {
            let d = case.d().expect("S4 has d");
            vec![spell(&[]), spell(&[c]), spell(&[d]), spell(&[c, d])]
        }
    }
}
