use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An edge label `m_st ∈ {2, 3, ...} ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficient {
    Finite(u32),
    Infinite,
}

impl Coefficient {
    pub fn is_finite(self) -> bool {
        matches!(self, Coefficient::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Coefficient::Finite(m) => Some(m),
            Coefficient::Infinite => None,
        }
    }

    /// `1/m`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> Ratio<i64> {
        match self {
            Coefficient::Finite(m) => Ratio::new(1, i64::from(m)),
            Coefficient::Infinite => Ratio::zero(),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Finite(m) => write!(f, "{m}"),
            Coefficient::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coefficient::Finite(m) => s.serialize_u32(*m),
            Coefficient::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(m) if m >= 0 => u32::try_from(m)
                .map(Coefficient::Finite)
                .map_err(serde::de::Error::custom),
            Raw::Int(m) => Err(serde::de::Error::custom(format!("coefficient {m} is negative"))),
            Raw::Text(t) if t == "inf" || t == "∞" => Ok(Coefficient::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad coefficient '{t}'"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub u: String,
    pub v: String,
    pub m: Coefficient,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

/// A labelled simple graph `Γ`. Absent edges have coefficient `∞`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    coef: Vec<Vec<Coefficient>>,
}

/// Outcome of the dimension test, with the first offending triangle in name order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Dimension {
    Two,
    Discrete,
    Spherical { triangle: [String; 3], sum: String },
}

impl DefiningGraph {
    pub fn new(names: Vec<String>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if seen.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex '{n}'")));
            }
        }
        let k = names.len();
        Ok(DefiningGraph { names, coef: vec![vec![Coefficient::Infinite; k]; k] })
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let mut g = DefiningGraph::new(spec.vertices.clone())?;
        let mut present = std::collections::HashSet::new();
        for e in &spec.edges {
            let i = g.index(&e.u).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex '{}'", e.u)))?;
            let j = g.index(&e.v).ok_or_else(|| Error::InvalidGraph(format!("unknown vertex '{}'", e.v)))?;
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at '{}'", e.u)));
            }
            if !present.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {}-{}", e.u, e.v)));
            }
            if let Coefficient::Finite(m) = e.m {
                if m < 2 {
                    return Err(Error::InvalidGraph(format!(
                        "coefficient {m} on {}-{} is below 2",
                        e.u, e.v
                    )));
                }
            }
            g.set(i, j, e.m);
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: GraphSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))?;
        DefiningGraph::from_spec(&spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        DefiningGraph::from_json(&text)
    }

    pub fn to_spec(&self) -> GraphSpec {
        let mut edges = Vec::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if let Coefficient::Finite(_) = self.coef[i][j] {
                    edges.push(EdgeSpec {
                        u: self.names[i].clone(),
                        v: self.names[j].clone(),
                        m: self.coef[i][j],
                    });
                }
            }
        }
        GraphSpec { vertices: self.names.clone(), edges }
    }

    /// Convenience constructor from `(u, v, m)` triples over the given vertex names.
    pub fn from_edges(names: &[&str], edges: &[(&str, &str, u32)]) -> Result<Self> {
        DefiningGraph::from_spec(&GraphSpec {
            vertices: names.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|&(u, v, m)| EdgeSpec { u: u.into(), v: v.into(), m: Coefficient::Finite(m) })
                .collect(),
        })
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, m: Coefficient) {
        self.coef[i][j] = m;
        self.coef[j][i] = m;
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn coefficient(&self, i: usize, j: usize) -> Coefficient {
        self.coef[i][j]
    }

    /// Unordered pairs `{i < j}` with finite coefficient.
    pub fn finite_edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                if let Coefficient::Finite(m) = self.coef[i][j] {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn dimension(&self) -> Dimension {
        if self.finite_edges().is_empty() {
            return Dimension::Discrete;
        }
        let k = self.rank();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by(|&x, &y| self.names[x].cmp(&self.names[y]));
        for (x, &i) in order.iter().enumerate() {
            for (y, &j) in order.iter().enumerate().skip(x + 1) {
                for &l in order.iter().skip(y + 1) {
                    let (a, b, c) = (self.coef[i][j], self.coef[i][l], self.coef[j][l]);
                    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
                        continue;
                    }
                    let sum = a.reciprocal() + b.reciprocal() + c.reciprocal();
                    if sum > Ratio::from_integer(1) {
                        return Dimension::Spherical {
                            triangle: [self.names[i].clone(), self.names[j].clone(), self.names[l].clone()],
                            sum: sum.to_string(),
                        };
                    }
                }
            }
        }
        Dimension::Two
    }

    /// Not discrete, and every triangle has `1/m_ab + 1/m_ac + 1/m_bc <= 1`.
    pub fn is_two_dimensional(&self) -> bool {
        self.dimension() == Dimension::Two
    }

    fn components(&self, joined: impl Fn(usize, usize) -> bool) -> usize {
        let k = self.rank();
        let mut seen = vec![false; k];
        let mut count = 0;
        for s in 0..k {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(i) = stack.pop() {
                for j in 0..k {
                    if !seen[j] && i != j && joined(i, j) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components(|i, j| self.coef[i][j].is_finite()) <= 1
    }

    /// `Γ` is a join of two nonempty parts with every cross edge labelled 2. That happens
    /// exactly when the pairs not joined by a 2-edge form a disconnected graph.
    pub fn is_reducible(&self) -> bool {
        self.rank() >= 2 && self.components(|i, j| self.coef[i][j] != Coefficient::Finite(2)) > 1
    }

    pub fn is_right_angled(&self) -> bool {
        self.finite_edges().iter().all(|&(_, _, m)| m == 2)
    }

    /// `Γ^{st}`: adds an edge of coefficient 6 when `m_st = ∞`.
    pub fn augment(&self, s: usize, t: usize) -> DefiningGraph {
        let mut g = self.clone();
        if s != t && !self.coef[s][t].is_finite() {
            g.set(s, t, Coefficient::Finite(6));
        }
        g
    }

    /// Coefficient table keyed by name pairs, for reports.
    pub fn coefficient_table(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                out.insert(format!("{}{}", self.names[i], self.names[j]), self.coef[i][j].to_string());
            }
        }
        out
    }
}
