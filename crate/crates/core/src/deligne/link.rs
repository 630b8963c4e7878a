use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::develop::{develop, Commuting, Dihedral, Free};
use super::domain::{DomainComplex, DomainVertex, PairGroup};
use super::graph::DefiningGraph;
use super::PiMultiple;
use crate::coset_tree::DEFAULT_BUDGET;
use crate::dihedral::DihedralGroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkEdge {
    pub u: usize,
    pub v: usize,
    /// Length as a multiple of `π`.
    pub length: PiMultiple,
}

/// A finite metric graph with lengths in `ℚ·π`. Parallel edges are allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LinkGraph {
    labels: Vec<String>,
    edges: Vec<LinkEdge>,
}

impl LinkGraph {
    pub fn new() -> Self {
        LinkGraph::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> usize {
        self.labels.push(label.into());
        self.labels.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize, length: PiMultiple) {
        self.edges.push(LinkEdge { u, v, length });
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edges(&self) -> &[LinkEdge] {
        &self.edges
    }

    pub fn valences(&self) -> Vec<usize> {
        let mut val = vec![0; self.vertex_count()];
        for e in &self.edges {
            val[e.u] += 1;
            val[e.v] += 1;
        }
        val
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        adj
    }

    /// Shortest cycle length, `None` for a forest.
    ///
    /// For each edge `uv`, the shortest `u`–`v` path avoiding it closes the shortest cycle
    /// through `uv`. Searches stop once they cannot beat the best cycle so far.
    pub fn systole(&self) -> Option<PiMultiple> {
        let adj = self.adjacency();
        let mut best: Option<PiMultiple> = None;
        let mut dist: Vec<Option<PiMultiple>> = vec![None; self.vertex_count()];
        let mut touched = Vec::new();
        for (skip, e) in self.edges.iter().enumerate() {
            if e.u == e.v {
                best = Some(best.map_or(e.length, |b| b.min(e.length)));
                continue;
            }
            let bound = best.map(|b| b - e.length);
            if let Some(d) = shortest_avoiding(&adj, &self.edges, e.u, e.v, skip, bound, &mut dist, &mut touched) {
                let c = d + e.length;
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        }
        best
    }

    /// Fewest edges in a cycle, `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let mut unit = self.clone();
        for e in &mut unit.edges {
            e.length = Ratio::from_integer(1);
        }
        unit.systole().map(|s| s.to_integer() as usize)
    }

    pub fn is_forest(&self) -> bool {
        self.systole().is_none()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -- n{} [label=\"{}π\"];", e.u, e.v, e.length);
        }
        out.push_str("}\n");
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn shortest_avoiding(
    adj: &[Vec<(usize, usize)>],
    edges: &[LinkEdge],
    from: usize,
    to: usize,
    skip: usize,
    bound: Option<PiMultiple>,
    dist: &mut [Option<PiMultiple>],
    touched: &mut Vec<usize>,
) -> Option<PiMultiple> {
    for &t in touched.iter() {
        dist[t] = None;
    }
    touched.clear();
    let mut heap = BinaryHeap::new();
    dist[from] = Some(Ratio::zero());
    touched.push(from);
    heap.push(Reverse((Ratio::zero(), from)));
    while let Some(Reverse((d, x))) = heap.pop() {
        if dist[x].is_some_and(|dx| dx < d) {
            continue;
        }
        if x == to {
            return Some(d);
        }
        for &(y, ei) in &adj[x] {
            if ei == skip {
                continue;
            }
            let nd = d + edges[ei].length;
            if bound.is_some_and(|b| nd >= b) {
                continue;
            }
            if dist[y].is_none_or(|dy| nd < dy) {
                if dist[y].is_none() {
                    touched.push(y);
                }
                dist[y] = Some(nd);
                heap.push(Reverse((nd, y)));
            }
        }
    }
    None
}

/// Size controls for developed links.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinkOptions {
    /// Edge radius of the ball around the base element; exponent range for `v_a` links.
    pub radius: u32,
    /// Largest `|k|` followed from a coset `g⟨s⟩` to `g·s^k`.
    pub exponent_cap: u32,
    pub budget: usize,
}

impl LinkOptions {
    pub fn with_radius(radius: u32) -> Self {
        LinkOptions { radius, exponent_cap: 2, budget: DEFAULT_BUDGET }
    }
}

/// `Lk(v_∅)`: the barycentric subdivision of `Γ`, with `ℓ(e_{a,ab}) = π/2 − π/(2m_ab)`.
/// No dimension check is made.
pub fn empty_link(graph: &DefiningGraph) -> LinkGraph {
    let mut link = LinkGraph::new();
    for n in graph.names() {
        link.add_vertex(format!("v_{n}"));
    }
    for (i, j, m) in graph.finite_edges() {
        let mid = link.add_vertex(format!("v_{}{}", graph.name(i), graph.name(j)));
        let len = Ratio::new(1, 2) - Ratio::new(1, 2 * i64::from(m));
        link.add_edge(i, mid, len);
        link.add_edge(j, mid, len);
    }
    link
}

impl DomainComplex {
    /// Parses `v_∅` (also `v_0`, `v_empty`), `v_a`, `v_ab` or `v_a,b`.
    pub fn parse_vertex(&self, text: &str) -> Result<DomainVertex> {
        let g = self.graph();
        let unknown = || Error::UnknownVertex(text.to_string());
        let body = text.strip_prefix("v_").ok_or_else(unknown)?;
        if ["∅", "0", "empty", ""].contains(&body) {
            return Ok(DomainVertex::Empty);
        }
        if let Some(i) = g.index(body) {
            return Ok(DomainVertex::Gen(i));
        }
        let pairs: Vec<(usize, usize)> = match body.split_once(',') {
            Some((x, y)) => g.index(x).zip(g.index(y)).into_iter().collect(),
            None => body
                .char_indices()
                .skip(1)
                .filter_map(|(k, _)| g.index(&body[..k]).zip(g.index(&body[k..])))
                .collect(),
        };
        match pairs.as_slice() {
            [(i, j)] if i != j && self.pair_group(*i, *j).is_some() => {
                Ok(DomainVertex::Pair(*i.min(j), *i.max(j)))
            }
            _ => Err(unknown()),
        }
    }

    pub fn link(&self, vertex: DomainVertex, opts: LinkOptions) -> Result<LinkGraph> {
        let g = self.graph();
        match vertex {
            DomainVertex::Empty => Ok(empty_link(g)),
            DomainVertex::Gen(a) => {
                let mut link = LinkGraph::new();
                let r = i64::from(opts.radius);
                let a_name = g.name(a);
                let copies: Vec<usize> = (-r..=r)
                    .map(|n| {
                        let w = crate::freeword::Word::power(crate::freeword::Letter::A, n).to_string();
                        let w = if n == 0 { "1".to_string() } else { w.replacen('a', a_name, 1) };
                        link.add_vertex(format!("{w}·v_∅"))
                    })
                    .collect();
                for b in (0..g.rank()).filter(|&b| b != a && self.pair_group(a, b).is_some()) {
                    let leaf = link.add_vertex(format!("v_{}{}", a_name, g.name(b)));
                    for &c in &copies {
                        link.add_edge(c, leaf, Ratio::new(1, 2));
                    }
                }
                Ok(link)
            }
            DomainVertex::Pair(i, j) => {
                let names = [g.name(i), g.name(j)];
                let (r, cap, budget) = (opts.radius, opts.exponent_cap, opts.budget);
                match self.pair_group(i, j) {
                    None => Err(Error::UnknownVertex(self.vertex_name(vertex))),
                    Some(PairGroup::Free) => develop(&Free, names, Ratio::new(1, 12), r, cap, budget),
                    Some(PairGroup::Dihedral(2)) => {
                        develop(&Commuting, names, Ratio::new(1, 4), r, cap, budget)
                    }
                    Some(PairGroup::Dihedral(m)) => {
                        let group = Dihedral(DihedralGroup::new(m)?);
                        develop(&group, names, Ratio::new(1, 2 * i64::from(m)), r, cap, budget)
                    }
                }
            }
        }
    }
}

/// `link(Γ, vertex, radius)` on the unaugmented complex.
pub fn link(graph: &DefiningGraph, vertex: &str, opts: LinkOptions) -> Result<LinkGraph> {
    let k = DomainComplex::build(graph)?;
    let v = k.parse_vertex(vertex)?;
    k.link(v, opts)
}

/// How much of a link the systole was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LinkScope {
    /// The whole link.
    Exact,
    /// A finite ball of a developed link.
    Ball { radius: u32, exponent_cap: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkCheck {
    pub vertex: String,
    pub vertices: usize,
    pub edges: usize,
    /// `None` means no cycle.
    pub systole: Option<PiMultiple>,
    pub scope: LinkScope,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkReport {
    pub checks: Vec<LinkCheck>,
}

impl LinkReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.passes)
    }
}

pub fn two_pi() -> PiMultiple {
    Ratio::from_integer(2)
}

impl DomainComplex {
    /// Systole of every vertex link against `2π`, in parallel.
    pub fn check_link_condition(&self, opts: LinkOptions) -> Result<LinkReport> {
        let checks: Result<Vec<LinkCheck>> = self
            .vertices()
            .par_iter()
            .map(|&v| {
                let link = self.link(v, opts)?;
                let systole = link.systole();
                let scope = match v {
                    DomainVertex::Pair(..) => {
                        LinkScope::Ball { radius: opts.radius, exponent_cap: opts.exponent_cap }
                    }
                    _ => LinkScope::Exact,
                };
                Ok(LinkCheck {
                    vertex: self.vertex_name(v),
                    vertices: link.vertex_count(),
                    edges: link.edge_count(),
                    systole,
                    scope,
                    passes: systole.is_none_or(|s| s >= two_pi()),
                })
            })
            .collect();
        Ok(LinkReport { checks: checks? })
    }
}

/// `check_link_condition(Γ, radius)`; refuses graphs that are not 2-dimensional.
pub fn check_link_condition(graph: &DefiningGraph, radius: u32) -> Result<LinkReport> {
    DomainComplex::build(graph)?.check_link_condition(LinkOptions::with_radius(radius))
}
