use std::collections::{HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use super::ambient::AmbientWord;
use super::cases::{translates, witness_element, CaseResult, Situation};
use crate::deligne::{two_pi, DefiningGraph, DomainComplex, DomainVertex, LinkGraph, PiMultiple};
use crate::error::{Error, Result};

/// The triangle fan `T_st` around `v_∅` that `P` is made of.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tile {
    pub pairs: Vec<(usize, usize)>,
}

impl Tile {
    pub fn for_case(case: &CaseResult) -> Tile {
        let (a, b, c) = (case.a(), case.b(), case.c());
        let cycle = match case.situation {
            Situation::S4 => vec![a, b, c, case.d().expect("S4 has d")],
            _ => vec![a, b, c],
        };
        let mut pairs = Vec::new();
        for k in 0..cycle.len() {
            let (s, t) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            pairs.push((s, t));
            pairs.push((t, s));
        }
        Tile { pairs }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PolygonTriangle {
    pub tile: usize,
    pub s: usize,
    pub t: usize,
    /// Vertex classes of `v_∅`, `v_s`, `v_st`.
    pub vertices: [usize; 3],
    /// Edge class opposite each corner.
    pub edges: [usize; 3],
    pub angles: [PiMultiple; 3],
    /// Side length opposite each corner, with `|v_∅ v_s| = 1`.
    pub sides: [f64; 3],
}

impl PolygonTriangle {
    pub fn corner_of(&self, vertex: usize) -> Option<usize> {
        self.vertices.iter().position(|&v| v == vertex)
    }

    pub fn angle(&self, corner: usize) -> f64 {
        std::f64::consts::PI * ratio_f64(self.angles[corner])
    }
}

fn ratio_f64(r: PiMultiple) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, Serialize)]
pub struct PolygonVertex {
    pub kind: DomainVertex,
    /// The first translate containing the vertex.
    pub translate: usize,
    pub name: String,
    /// `None` means the link has no cycle.
    pub link_systole: Option<PiMultiple>,
}

/// `P`: translates of the tile glued wherever the relating element lies syntactically in
/// the local group of the shared simplex.
#[derive(Debug, Clone, Serialize)]
pub struct PolygonComplex {
    pub names: Vec<String>,
    pub case: CaseResult,
    pub translates: Vec<AmbientWord>,
    pub triangles: Vec<PolygonTriangle>,
    pub vertices: Vec<PolygonVertex>,
    /// Triangles on each edge class.
    pub edge_triangles: Vec<Vec<usize>>,
    pub source: usize,
    pub target: usize,
    /// Planar coordinates of each triangle's corners, unfolded from `T_ab`.
    pub layout: Vec<[[f64; 2]; 3]>,
}

/// Generators whose span is the local group at a domain vertex.
fn local_letters(v: DomainVertex) -> Vec<usize> {
    match v {
        DomainVertex::Empty => vec![],
        DomainVertex::Gen(s) => vec![s],
        DomainVertex::Pair(s, t) => vec![s, t],
    }
}

fn edge_letters(x: DomainVertex, y: DomainVertex) -> Vec<usize> {
    let ly = local_letters(y);
    local_letters(x).into_iter().filter(|l| ly.contains(l)).collect()
}

struct Keys<K> {
    index: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: std::hash::Hash + Eq + Clone> Keys<K> {
    fn new() -> Self {
        Keys { index: HashMap::new(), keys: Vec::new() }
    }

    fn id(&mut self, k: K) -> usize {
        if let Some(&i) = self.index.get(&k) {
            return i;
        }
        self.keys.push(k.clone());
        self.index.insert(k, self.keys.len() - 1);
        self.keys.len() - 1
    }
}

/// Compacts union-find roots to `0..n` in first-seen order.
fn classes(uf: &UnionFind<usize>, n: usize) -> Vec<usize> {
    let mut map = HashMap::new();
    (0..n)
        .map(|i| {
            let r = uf.find(i);
            let next = map.len();
            *map.entry(r).or_insert(next)
        })
        .collect()
}

pub fn build_polygon(graph: &DefiningGraph, case: &CaseResult) -> Result<PolygonComplex> {
    let domain = DomainComplex::augmented(graph, case.b(), case.c());
    let tile = Tile::for_case(case);
    let labels = translates(case);
    let names = graph.names().to_vec();

    let mut vkeys: Keys<(usize, DomainVertex)> = Keys::new();
    let mut ekeys: Keys<(usize, DomainVertex, DomainVertex)> = Keys::new();
    let mut raw = Vec::new();
    for (k, _) in labels.iter().enumerate() {
        for &(s, t) in &tile.pairs {
            let group = domain.pair_group(s, t).ok_or_else(|| Error::Gluing {
                label: labels[k].display(&names).to_string(),
                simplex: format!("T_{}{}", names[s], names[t]),
            })?;
            let tri = crate::deligne::DomainTriangle {
                s,
                t,
                group,
                angles: crate::deligne::triangle_angles(group),
            };
            let dv = tri.vertices();
            let vids = dv.map(|v| vkeys.id((k, v)));
            let mut eids = [0; 3];
            for c in 0..3 {
                let (x, y) = (dv[(c + 1) % 3], dv[(c + 2) % 3]);
                eids[c] = ekeys.id((k, x.min(y), x.max(y)));
            }
            raw.push((k, tri, vids, eids));
        }
    }

    let mut vuf = UnionFind::new(vkeys.keys.len());
    for (i, &(ki, v)) in vkeys.keys.iter().enumerate() {
        for (j, &(kj, w)) in vkeys.keys.iter().enumerate().skip(i + 1) {
            if v == w && labels[ki].relative(&labels[kj]).uses_only(&local_letters(v)) {
                vuf.union(i, j);
            }
        }
    }
    let mut euf = UnionFind::new(ekeys.keys.len());
    for (i, &(ki, x, y)) in ekeys.keys.iter().enumerate() {
        for (j, &(kj, x2, y2)) in ekeys.keys.iter().enumerate().skip(i + 1) {
            if (x, y) == (x2, y2) && labels[ki].relative(&labels[kj]).uses_only(&edge_letters(x, y)) {
                euf.union(i, j);
            }
        }
    }
    let vclass = classes(&vuf, vkeys.keys.len());
    let eclass = classes(&euf, ekeys.keys.len());
    let nv = vclass.iter().max().map_or(0, |m| m + 1);
    let ne = eclass.iter().max().map_or(0, |m| m + 1);

    let mut vertices: Vec<Option<PolygonVertex>> = vec![None; nv];
    for (i, &(k, v)) in vkeys.keys.iter().enumerate() {
        let slot = &mut vertices[vclass[i]];
        if slot.is_none() {
            let label = &labels[k];
            let base = domain.vertex_name(v);
            let name =
                if label.is_identity() { base } else { format!("{}·{base}", label.display(&names)) };
            *slot = Some(PolygonVertex { kind: v, translate: k, name, link_systole: None });
        }
    }
    let mut vertices: Vec<PolygonVertex> = vertices.into_iter().map(|v| v.expect("class")).collect();

    let triangles: Vec<PolygonTriangle> = raw
        .iter()
        .map(|(k, tri, vids, eids)| {
            let apex = std::f64::consts::PI * ratio_f64(tri.angles[2]);
            let sides = tri.angles.map(|a| (std::f64::consts::PI * ratio_f64(a)).sin() / apex.sin());
            PolygonTriangle {
                tile: *k,
                s: tri.s,
                t: tri.t,
                vertices: vids.map(|v| vclass[v]),
                edges: eids.map(|e| eclass[e]),
                angles: tri.angles,
                sides,
            }
        })
        .collect();

    let mut edge_triangles = vec![Vec::new(); ne];
    for (i, t) in triangles.iter().enumerate() {
        for &e in &t.edges {
            edge_triangles[e].push(i);
        }
    }
    for (e, ts) in edge_triangles.iter().enumerate() {
        if ts.len() > 2 {
            let t = &triangles[ts[0]];
            return Err(Error::Gluing {
                label: labels[t.tile].display(&names).to_string(),
                simplex: format!("edge {e} shared by {} triangles", ts.len()),
            });
        }
    }
    check_tiles_connected(&triangles, &edge_triangles, &labels, &names)?;

    for (p, vertex) in vertices.iter_mut().enumerate() {
        let systole = vertex_link(&triangles, p).systole();
        if systole.is_some_and(|s| s < two_pi()) {
            return Err(Error::Inconclusive(format!(
                "link of {} in P has systole {}π",
                vertex.name,
                systole.expect("checked")
            )));
        }
        vertex.link_systole = systole;
    }

    let source = vertices
        .iter()
        .position(|v| v.translate == 0 && v.kind == DomainVertex::Pair(case.a().min(case.b()), case.a().max(case.b())))
        .expect("v_ab is in the first tile");
    let witness = witness_element(case);
    let wk = labels.iter().position(|l| *l == witness).expect("witness is a translate");
    let ab = DomainVertex::Pair(case.a().min(case.b()), case.a().max(case.b()));
    let target = vclass[vkeys.index[&(wk, ab)]];

    let layout = unfold_layout(&triangles, &edge_triangles);
    Ok(PolygonComplex {
        names,
        case: case.clone(),
        translates: labels,
        triangles,
        vertices,
        edge_triangles,
        source,
        target,
        layout,
    })
}

fn check_tiles_connected(
    triangles: &[PolygonTriangle],
    edge_triangles: &[Vec<usize>],
    labels: &[AmbientWord],
    names: &[String],
) -> Result<()> {
    let mut seen = vec![false; labels.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(k) = queue.pop_front() {
        for t in triangles.iter().filter(|t| t.tile == k) {
            for &e in &t.edges {
                for &o in &edge_triangles[e] {
                    let other = triangles[o].tile;
                    if !seen[other] {
                        seen[other] = true;
                        queue.push_back(other);
                    }
                }
            }
        }
    }
    match seen.iter().position(|s| !s) {
        None => Ok(()),
        Some(k) => Err(Error::Gluing {
            label: labels[k].display(names).to_string(),
            simplex: "no edge shared with the other translates".into(),
        }),
    }
}

/// `Lk_P(p)`: one edge per triangle corner at `p`, joining the two sides through `p`.
pub fn vertex_link(triangles: &[PolygonTriangle], p: usize) -> LinkGraph {
    let mut link = LinkGraph::new();
    let mut ids: HashMap<usize, usize> = HashMap::new();
    for t in triangles {
        let Some(c) = t.corner_of(p) else { continue };
        let mut node = |e: usize, link: &mut LinkGraph| *ids.entry(e).or_insert_with(|| link.add_vertex(format!("e{e}")));
        let x = node(t.edges[(c + 1) % 3], &mut link);
        let y = node(t.edges[(c + 2) % 3], &mut link);
        link.add_edge(x, y, t.angles[c]);
    }
    link
}

/// Places `k` given `i` at `pi`, `j` at `pj`, on the side `sign` (`+1` counterclockwise).
pub(crate) fn place_third(pi: [f64; 2], pj: [f64; 2], angle_i: f64, side_ik: f64, sign: f64) -> [f64; 2] {
    let (dx, dy) = (pj[0] - pi[0], pj[1] - pi[1]);
    let len = dx.hypot(dy);
    let (ux, uy) = (dx / len, dy / len);
    let (c, s) = (angle_i.cos(), sign * angle_i.sin());
    [pi[0] + side_ik * (c * ux - s * uy), pi[1] + side_ik * (s * ux + c * uy)]
}

pub(crate) fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Unfolds across `edge` of `from` (already placed at `placed`) into triangle `to`.
pub(crate) fn unfold_across(
    triangles: &[PolygonTriangle],
    from: usize,
    placed: [[f64; 2]; 3],
    to: usize,
    edge: usize,
) -> [[f64; 2]; 3] {
    let f = &triangles[from];
    let t = &triangles[to];
    let ce = f.edges.iter().position(|&e| e == edge).expect("edge of from");
    let (i, j) = ((ce + 1) % 3, (ce + 2) % 3);
    let (vi, vj) = (f.vertices[i], f.vertices[j]);
    let ti = t.corner_of(vi).expect("shared vertex");
    let tj = t.corner_of(vj).expect("shared vertex");
    let tk = 3 - ti - tj;
    let away = -orient(placed[i], placed[j], placed[ce]).signum();
    let mut out = [[0.0; 2]; 3];
    out[ti] = placed[i];
    out[tj] = placed[j];
    out[tk] = place_third(placed[i], placed[j], t.angle(ti), t.sides[tj], away);
    out
}

fn unfold_layout(triangles: &[PolygonTriangle], edge_triangles: &[Vec<usize>]) -> Vec<[[f64; 2]; 3]> {
    let mut layout: Vec<Option<[[f64; 2]; 3]>> = vec![None; triangles.len()];
    let first = &triangles[0];
    let mut p = [[0.0; 2]; 3];
    p[1] = [first.sides[2], 0.0];
    p[2] = place_third(p[0], p[1], first.angle(0), first.sides[1], 1.0);
    layout[0] = Some(p);
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        let placed = layout[t].expect("queued triangles are placed");
        for &e in &triangles[t].edges {
            for &o in &edge_triangles[e] {
                if layout[o].is_none() {
                    layout[o] = Some(unfold_across(triangles, t, placed, o, e));
                    queue.push_back(o);
                }
            }
        }
    }
    layout.into_iter().map(|l| l.unwrap_or([[0.0; 2]; 3])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::classify_cases;

    fn polygon(names: &[&str], edges: &[(&str, &str, u32)]) -> PolygonComplex {
        let g = DefiningGraph::from_edges(names, edges).unwrap();
        build_polygon(&g, &classify_cases(&g).unwrap()).unwrap()
    }

    #[test]
    fn triangle_polygon() {
        let p = polygon(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3), ("b", "c", 3)]);
        assert_eq!(p.triangles.len(), 12);
        // Shared path v_ac–v_c–v_bc.
        assert_eq!(p.vertices.len(), 2 * 7 - 3);
        let shared: Vec<&str> =
            p.vertices.iter().filter(|v| v.translate == 0).map(|v| v.name.as_str()).collect();
        assert_eq!(shared.len(), 7);
        let glued = p.edge_triangles.iter().filter(|ts| ts.len() == 2 && p.triangles[ts[0]].tile != p.triangles[ts[1]].tile);
        assert_eq!(glued.count(), 2);
        assert!(p.vertices.iter().all(|v| v.link_systole.is_none_or(|s| s >= two_pi())));
        assert_ne!(p.source, p.target);
    }

    #[test]
    fn square_polygon() {
        let p = polygon(
            &["a", "b", "c", "d"],
            &[("a", "b", 3), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2)],
        );
        assert_eq!(p.triangles.len(), 32);
        assert_eq!(p.translates.len(), 4);
    }

    #[test]
    fn tile_angle_sum_at_centre() {
        let p = polygon(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3), ("b", "c", 3)]);
        let centre = p.triangles[0].vertices[0];
        let sum: PiMultiple = p.triangles.iter().filter(|t| t.vertices[0] == centre).map(|t| t.angles[0]).sum();
        assert_eq!(sum, two_pi());
    }

    #[test]
    fn layout_preserves_side_lengths() {
        let p = polygon(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3)]);
        for (t, pts) in p.triangles.iter().zip(&p.layout) {
            for c in 0..3 {
                let (u, v) = (pts[(c + 1) % 3], pts[(c + 2) % 3]);
                assert!(((u[0] - v[0]).hypot(u[1] - v[1]) - t.sides[c]).abs() < 1e-9);
            }
        }
    }
}
