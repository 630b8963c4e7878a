//! Balls in the development of the segment `⟨s⟩–{1}–⟨t⟩` over a vertex group `G`:
//! the bipartite graph of elements of `G` and cosets `g⟨s⟩`, `g⟨t⟩`.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::link::LinkGraph;
use super::PiMultiple;
use crate::dihedral::{DihedralGroup, GarsideForm};
use crate::error::{Error, Result};
use crate::freeword::{Letter, Word};

pub(crate) trait VertexGroup {
    type Elem: Clone + Eq + Hash;

    fn identity(&self) -> Self::Elem;
    fn times_power(&self, g: &Self::Elem, s: Letter, k: i64) -> Self::Elem;
    /// A canonical element of `g⟨s⟩`.
    fn coset_key(&self, g: &Self::Elem, s: Letter) -> Self::Elem;
    fn label(&self, g: &Self::Elem) -> String;
}

pub(crate) struct Dihedral(pub DihedralGroup);

impl VertexGroup for Dihedral {
    type Elem = GarsideForm;

    fn identity(&self) -> GarsideForm {
        GarsideForm::default()
    }

    fn times_power(&self, g: &GarsideForm, s: Letter, k: i64) -> GarsideForm {
        self.0.multiply(g, &self.0.normal_form(&Word::power(s, k)))
    }

    fn coset_key(&self, g: &GarsideForm, s: Letter) -> GarsideForm {
        self.0.coset_representative(g, s)
    }

    fn label(&self, g: &GarsideForm) -> String {
        g.to_string()
    }
}

/// `A_st` with `m_st = 2`, as `ℤ²`.
pub(crate) struct Commuting;

impl VertexGroup for Commuting {
    type Elem = (i64, i64);

    fn identity(&self) -> (i64, i64) {
        (0, 0)
    }

    fn times_power(&self, g: &(i64, i64), s: Letter, k: i64) -> (i64, i64) {
        match s {
            Letter::A => (g.0 + k, g.1),
            Letter::B => (g.0, g.1 + k),
        }
    }

    fn coset_key(&self, g: &(i64, i64), s: Letter) -> (i64, i64) {
        match s {
            Letter::A => (0, g.1),
            Letter::B => (g.0, 0),
        }
    }

    fn label(&self, g: &(i64, i64)) -> String {
        Word::from_syllables([(Letter::A, g.0), (Letter::B, g.1)]).to_string()
    }
}

/// The free group `F_st`.
pub(crate) struct Free;

impl VertexGroup for Free {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::identity()
    }

    fn times_power(&self, g: &Word, s: Letter, k: i64) -> Word {
        g.concat(&Word::power(s, k))
    }

    fn coset_key(&self, g: &Word, s: Letter) -> Word {
        match g.syllables().last() {
            Some(last) if last.letter == s => g.concat(&Word::power(s, -last.exp)),
            _ => g.clone(),
        }
    }

    fn label(&self, g: &Word) -> String {
        g.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node<E> {
    Elem(E),
    Coset(Letter, E),
}

/// BFS ball of the given edge radius around the identity, following `g⟨s⟩ ∋ g·s^k` for
/// `0 < |k| <= exponent_cap`.
pub(crate) fn develop<G: VertexGroup>(
    group: &G,
    names: [&str; 2],
    length: PiMultiple,
    radius: u32,
    exponent_cap: u32,
    budget: usize,
) -> Result<LinkGraph> {
    let mut link = LinkGraph::new();
    let mut index: HashMap<Node<G::Elem>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let rename = |s: String| -> String {
        s.chars()
            .map(|c| match c {
                'a' => names[0].to_string(),
                'b' => names[1].to_string(),
                other => other.to_string(),
            })
            .collect()
    };
    let label = |n: &Node<G::Elem>| match n {
        Node::Elem(g) => rename(group.label(g)),
        Node::Coset(s, g) => {
            let gen = if *s == Letter::A { names[0] } else { names[1] };
            let rep = rename(group.label(g));
            format!("{rep}⟨{gen}⟩")
        }
    };
    let root = Node::Elem(group.identity());
    index.insert(root.clone(), link.add_vertex(label(&root)));
    queue.push_back((root, 0u32));
    let mut seen_edges = std::collections::HashSet::new();
    while let Some((node, depth)) = queue.pop_front() {
        if depth == radius {
            continue;
        }
        let here = index[&node];
        let neighbours: Vec<Node<G::Elem>> = match &node {
            Node::Elem(g) => [Letter::A, Letter::B]
                .into_iter()
                .map(|s| Node::Coset(s, group.coset_key(g, s)))
                .collect(),
            Node::Coset(s, rep) => {
                let cap = i64::from(exponent_cap);
                let mut out = vec![Node::Elem(rep.clone())];
                out.extend((1..=cap).flat_map(|k| [k, -k]).map(|k| Node::Elem(group.times_power(rep, *s, k))));
                out
            }
        };
        for n in neighbours {
            let there = match index.get(&n) {
                Some(&i) => i,
                None => {
                    if link.vertex_count() >= budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    let i = link.add_vertex(label(&n));
                    index.insert(n.clone(), i);
                    queue.push_back((n, depth + 1));
                    i
                }
            };
            if seen_edges.insert((here.min(there), here.max(there))) {
                link.add_edge(here, there, length);
            }
        }
    }
    Ok(link)
}
