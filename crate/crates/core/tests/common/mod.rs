//! Independent oracles shared by the integration tests. Nothing here calls the normal form.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use artin_core::coset_tree::{TreeBall, TreeVertex};
use artin_core::deligne::{Coefficient, DefiningGraph, LinkGraph, PiMultiple};
use artin_core::freeword::{Letter, SignedLetter, Word};
use artin_core::witness::{admissible, Situation};
use num_rational::Ratio;
use rand::Rng;

/// Letters as signed small integers: `1 = a`, `-1 = a^-1`, `2 = b`, `-2 = b^-1`.
pub type Raw = Vec<i8>;

pub const LETTERS: [i8; 4] = [1, -1, 2, -2];

pub fn to_word(raw: &[i8]) -> Word {
    Word::from_letters(raw.iter().map(|&x| {
        let letter = if x.abs() == 1 { Letter::A } else { Letter::B };
        SignedLetter::new(letter, x > 0)
    }))
}

pub fn free_reduce(raw: &[i8]) -> Raw {
    let mut out: Raw = Vec::with_capacity(raw.len());
    for &x in raw {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn invert(raw: &[i8]) -> Raw {
    raw.iter().rev().map(|&x| -x).collect()
}

/// Every word of exactly `len` letters, reduced or not.
pub fn words_of_length(len: usize) -> Vec<Raw> {
    let mut layer = vec![Raw::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w| {
                LETTERS.iter().map(move |&x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    layer
}

pub fn words_up_to(len: usize) -> Vec<Raw> {
    (0..=len).flat_map(words_of_length).collect()
}

/// Freely reduced words of length at most `len`.
pub fn reduced_words_up_to(len: usize) -> Vec<Raw> {
    let mut all = vec![Raw::new()];
    let mut layer = vec![Raw::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &x in &LETTERS {
                if w.last() == Some(&-x) {
                    continue;
                }
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// `(a, b; k)` as raw letters with sign.
pub fn alternating(start: i8, k: usize, positive: bool) -> Raw {
    let other = 3 - start;
    let s = if positive { 1 } else { -1 };
    (0..k).map(|i| s * if i % 2 == 0 { start } else { other }).collect()
}

/// A letter-level `Δ_x^{±1}` somewhere in `raw`.
pub fn has_delta_subword(raw: &[i8], m: usize) -> bool {
    let targets: Vec<Raw> = [1i8, 2]
        .iter()
        .flat_map(|&s| [alternating(s, m, true), invert(&alternating(s, m, true))])
        .collect();
    raw.windows(m).any(|w| targets.iter().any(|t| t.as_slice() == w))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, x: usize, y: usize) {
        let (a, b) = (self.find(x), self.find(y));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// Equality classes of freely reduced words of length at most `cap` under the closure of
/// `Δ_a ↔ Δ_b` with free reduction and insertion, staying below the cap.
pub struct RewriteOracle {
    index: HashMap<Raw, usize>,
    uf: UnionFind,
}

impl RewriteOracle {
    pub fn new(m: usize, cap: usize) -> Self {
        let words = reduced_words_up_to(cap);
        let index: HashMap<Raw, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut uf = UnionFind { parent: (0..words.len()).collect() };
        // Cyclic conjugates of the relator Δ_a Δ_b^{-1} and of its inverse.
        let rel: Raw = alternating(1, m, true).into_iter().chain(invert(&alternating(2, m, true))).collect();
        let mut conjugates = Vec::new();
        for r in [rel.clone(), invert(&rel)] {
            for k in 0..r.len() {
                let mut c = r[k..].to_vec();
                c.extend_from_slice(&r[..k]);
                conjugates.push(c);
            }
        }
        for (i, w) in words.iter().enumerate() {
            for pos in 0..=w.len() {
                for r in &conjugates {
                    // Replace the prefix r[..k] read at `pos` by r[k..]^{-1}.
                    for k in 0..=r.len() {
                        if k > 0 && (pos + k > w.len() || w[pos + k - 1] != r[k - 1]) {
                            break;
                        }
                        let mut v = w[..pos].to_vec();
                        v.extend(invert(&r[k..]));
                        v.extend_from_slice(&w[pos + k..]);
                        let v = free_reduce(&v);
                        if let Some(&j) = index.get(&v) {
                            uf.union(i, j);
                        }
                    }
                }
            }
        }
        RewriteOracle { index, uf }
    }

    /// Class of any word whose free reduction is inside the cap.
    pub fn class(&mut self, raw: &[i8]) -> usize {
        let i = self.index[&free_reduce(raw)];
        self.uf.find(i)
    }
}

/// Every word with exactly `syllables` syllables and exponents `1..=cap` in absolute value.
pub fn syllable_words(syllables: usize, cap: i64) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack: Vec<(Word, Option<Letter>, usize)> = vec![(Word::identity(), None, 0)];
    while let Some((w, last, n)) = stack.pop() {
        if n == syllables {
            out.push(w);
            continue;
        }
        for l in [Letter::A, Letter::B] {
            if Some(l) == last {
                continue;
            }
            for e in (1..=cap).flat_map(|k| [k, -k]) {
                stack.push((w.concat(&Word::power(l, e)), Some(l), n + 1));
            }
        }
    }
    out
}

/// Breadth-first distances from `from` over the ball's own edge list, optionally with one
/// apex per axis joined to every ball vertex the axis passes through.
pub fn bfs(ball: &TreeBall, from: &TreeVertex, coned: bool) -> HashMap<TreeVertex, u64> {
    let verts = ball.vertices();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for (i, j) in ball.edges() {
        adj[i].push(j);
        adj[j].push(i);
    }
    if coned {
        let tree = ball.tree();
        let mut axes = Vec::new();
        for c in ball.cosets() {
            for axis in tree.axes_through(c) {
                if !axes.contains(&axis) {
                    axes.push(axis);
                }
            }
        }
        for axis in &axes {
            let apex = adj.len();
            adj.push(Vec::new());
            for (i, v) in verts.iter().enumerate() {
                let on = match v {
                    TreeVertex::Coset(c) => tree.on_axis(axis, c),
                    TreeVertex::Simplex(s) => tree.simplex_on_axis(axis, s),
                };
                if on {
                    adj[apex].push(i);
                    adj[i].push(apex);
                }
            }
        }
    }
    let start = verts.iter().position(|v| v == from).expect("start in ball");
    let mut dist = vec![u64::MAX; adj.len()];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if dist[j] == u64::MAX {
                dist[j] = dist[i] + 1;
                queue.push_back(j);
            }
        }
    }
    verts.iter().cloned().zip(dist).collect()
}

/// Shortest cycle in edges, by breadth-first search from every vertex.
pub fn girth_oracle(g: &LinkGraph) -> Option<usize> {
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (k, e) in g.edges().iter().enumerate() {
        adj[e.u].push((e.v, k));
        adj[e.v].push((e.u, k));
    }
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut via = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(y, k) in &adj[x] {
                if k == via[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    via[y] = k;
                    queue.push_back(y);
                } else {
                    let c = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(c, |b| b.min(c)));
                }
            }
        }
    }
    best
}

pub fn random_graph(rng: &mut impl Rng) -> (Vec<String>, Vec<(String, String, u32)>) {
    let k = rng.gen_range(3..=5);
    let names: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if rng.gen_bool(0.3) {
                continue;
            }
            edges.push((names[i].clone(), names[j].clone(), rng.gen_range(2..=7)));
        }
    }
    (names, edges)
}

pub fn build(names: &[String], edges: &[(String, String, u32)]) -> DefiningGraph {
    let n: Vec<&str> = names.iter().map(String::as_str).collect();
    let e: Vec<(&str, &str, u32)> = edges.iter().map(|(u, v, m)| (u.as_str(), v.as_str(), *m)).collect();
    DefiningGraph::from_edges(&n, &e).unwrap()
}

/// Shortest cycle of `Γ` weighted by `π − π/m`, over all simple cycles.
pub fn empty_link_systole_oracle(k: usize, edges: &[(usize, usize, u32)]) -> Option<PiMultiple> {
    let mut w = vec![vec![None; k]; k];
    for &(i, j, m) in edges {
        let len = Ratio::from_integer(1) - Ratio::new(1, i64::from(m));
        w[i][j] = Some(len);
        w[j][i] = Some(len);
    }
    fn extend(
        w: &[Vec<Option<PiMultiple>>],
        path: &mut Vec<usize>,
        acc: PiMultiple,
        best: &mut Option<PiMultiple>,
    ) {
        let (first, last) = (path[0], *path.last().unwrap());
        if path.len() >= 3 {
            if let Some(l) = w[last][first] {
                let c = acc + l;
                *best = Some(best.map_or(c, |b: PiMultiple| b.min(c)));
            }
        }
        for next in first + 1..w.len() {
            if path.contains(&next) {
                continue;
            }
            if let Some(l) = w[last][next] {
                path.push(next);
                extend(w, path, acc + l, best);
                path.pop();
            }
        }
    }
    let mut best = None;
    for s in 0..k {
        extend(&w, &mut vec![s], Ratio::from_integer(0), &mut best);
    }
    best
}

pub fn random_admissible(rng: &mut impl Rng) -> DefiningGraph {
    loop {
        let k = rng.gen_range(3..=5);
        let names: Vec<String> = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if rng.gen_bool(0.35) {
                    continue;
                }
                edges.push((names[i].as_str(), names[j].as_str(), rng.gen_range(2..=7)));
            }
        }
        let n: Vec<&str> = names.iter().map(String::as_str).collect();
        let g = DefiningGraph::from_edges(&n, &edges).unwrap();
        if admissible(&g).is_ok() {
            return g;
        }
    }
}

fn fin(c: Coefficient) -> Option<u32> {
    c.finite()
}

/// The situation's defining pattern, read straight off the graph.
pub fn pattern_holds(g: &DefiningGraph, s: Situation, v: &[usize]) -> bool {
    let m = |i: usize, j: usize| g.coefficient(v[i], v[j]);
    let recip = |c: Coefficient| fin(c).map_or(0.0, |x| 1.0 / f64::from(x));
    match s {
        Situation::S1 => {
            fin(m(0, 1)).is_some_and(|x| x >= 3)
                && fin(m(0, 2)).is_some_and(|x| x >= 3)
                && fin(m(1, 2)).is_some_and(|x| x >= 3)
        }
        Situation::S2 => {
            let ab = fin(m(0, 1)).is_some_and(|x| x >= 3);
            let ac = fin(m(0, 2));
            let bc = m(1, 2);
            let finite_variant = ac == Some(2) && fin(bc).is_some_and(|x| x >= 5);
            // Γ^{bc}: the missing edge becomes 6.
            let infinite_variant = !bc.is_finite()
                && ac.is_some()
                && recip(m(0, 1)) + recip(m(0, 2)) + 1.0 / 6.0 <= 1.0 + 1e-12;
            ab && (finite_variant || infinite_variant)
        }
        Situation::S3 => fin(m(0, 2)) == Some(2) && fin(m(0, 1)) == Some(4) && fin(m(1, 2)) == Some(4),
        Situation::S4 => {
            let (a, b, c, d) = (0, 1, 2, 3);
            fin(m(a, b)).is_some_and(|x| x >= 3)
                && fin(m(b, c)) == Some(2)
                && fin(m(c, d)) == Some(2)
                && fin(m(d, a)) == Some(2)
                && !m(a, c).is_finite()
                && !m(b, d).is_finite()
        }
    }
}

/// A random word with 1 to `max_len` letters, freely reduced by construction of `Word`.
pub fn random_word(rng: &mut impl Rng, max_len: usize) -> Word {
    let raw: Vec<i8> = (0..rng.gen_range(1..=max_len)).map(|_| LETTERS[rng.gen_range(0..4)]).collect();
    to_word(&raw)
}
