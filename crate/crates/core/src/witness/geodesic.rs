//! Geodesics in `P`.
//!
//! A shortest path in a piecewise-Euclidean surface is a chain of straight segments between
//! vertices. Each candidate segment is found by unfolding a strip of triangles into the
//! plane and keeping it when the straight line crosses every shared edge in its interior.
//! Dijkstra over these segments gives the geodesic.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use rayon::prelude::*;
use serde::Serialize;

use super::polygon::{orient, unfold_across, PolygonComplex, PolygonTriangle};
use crate::deligne::DomainVertex;
use crate::error::{Error, Result};

pub const STRIP_CAP: usize = 100_000;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
const EPS: f64 = 1e-12;

/// A straight segment from a vertex to a vertex.
#[derive(Debug, Clone)]
struct Sight {
    to: usize,
    length: f64,
    /// Triangles crossed, each unfolded with the start vertex at the origin.
    strip: Vec<(usize, [[f64; 2]; 3])>,
    end: [f64; 2],
    /// `Some(triangle)` when the segment is a side of that triangle.
    side_of: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Crossing {
    pub tile: usize,
    pub tile_label: String,
    pub triangle_index: usize,
    /// `T_st`.
    pub triangle: String,
    /// Weights on `v_∅`, `v_s`, `v_st` at the point of largest clearance.
    pub barycentric: [f64; 3],
    /// Distance from that point to the boundary of the triangle.
    pub clearance: f64,
}

/// A vertex of the path in the open tile, i.e. a translate of `v_∅`. Its stabiliser is
/// trivial.
#[derive(Debug, Clone, Serialize)]
pub struct TileCentre {
    pub tile: usize,
    pub tile_label: String,
    pub vertex: String,
    /// A triangle with a corner at the vertex.
    pub triangle_index: usize,
    pub triangle: String,
    pub barycentric: [f64; 3],
    /// Distance to the boundary of the tile.
    pub clearance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeodesicReport {
    pub from: String,
    pub to: String,
    pub length: f64,
    /// Shortest path length in the 1-skeleton.
    pub skeleton_length: f64,
    /// Vertices where the path bends or starts and ends.
    pub vertices: Vec<String>,
    pub crossings: Vec<Crossing>,
    pub tile_centres: Vec<TileCentre>,
    /// Pieces of the path in the layout coordinates of `P`.
    pub polyline: Vec<[[f64; 2]; 2]>,
    pub strips_explored: usize,
}

impl GeodesicReport {
    pub fn best_crossing(&self) -> Option<&Crossing> {
        self.crossings.iter().max_by(|x, y| x.clearance.total_cmp(&y.clearance))
    }

    /// The path meets the interior of some tile translate.
    pub fn meets_open_tile(&self) -> bool {
        !self.crossings.is_empty() || !self.tile_centres.is_empty()
    }
}

struct Explorer<'a> {
    p: &'a PolygonComplex,
    strips: &'a AtomicUsize,
}

impl Explorer<'_> {
    fn neighbour(&self, t: usize, edge: usize) -> Option<usize> {
        self.p.edge_triangles[edge].iter().copied().find(|&o| o != t)
    }

    fn sights_from(&self, src: usize) -> Result<Vec<Sight>> {
        let tris = &self.p.triangles;
        let mut out = Vec::new();
        for (t0, tri) in tris.iter().enumerate() {
            let Some(cp) = tri.corner_of(src) else { continue };
            let (cu, cw) = ((cp + 1) % 3, (cp + 2) % 3);
            let mut placed = [[0.0; 2]; 3];
            placed[cu] = [tri.sides[cw], 0.0];
            placed[cw] = super::polygon::place_third([0.0, 0.0], placed[cu], tri.angle(cp), tri.sides[cu], 1.0);
            for c in [cu, cw] {
                out.push(Sight {
                    to: tri.vertices[c],
                    length: tri.sides[3 - cp - c],
                    strip: vec![],
                    end: placed[c],
                    side_of: Some(t0),
                });
            }
            let mut visited = vec![false; tris.len()];
            visited[t0] = true;
            let mut strip = vec![(t0, placed)];
            let edge = tri.edges[cp];
            self.step(src, t0, placed, edge, placed[cu], placed[cw], &mut visited, &mut strip, &mut out)?;
        }
        Ok(out)
    }

    /// Crosses `edge` of `from`, with the cone of directions `[lo, hi]` still open.
    #[allow(clippy::too_many_arguments)]
    fn step(
        &self,
        src: usize,
        from: usize,
        placed: [[f64; 2]; 3],
        edge: usize,
        lo: [f64; 2],
        hi: [f64; 2],
        visited: &mut Vec<bool>,
        strip: &mut Vec<(usize, [[f64; 2]; 3])>,
        out: &mut Vec<Sight>,
    ) -> Result<()> {
        let Some(next) = self.neighbour(from, edge) else { return Ok(()) };
        if visited[next] {
            return Ok(());
        }
        if self.strips.fetch_add(1, AtomicOrdering::Relaxed) >= STRIP_CAP {
            return Err(Error::StripOverflow(STRIP_CAP));
        }
        let tris = &self.p.triangles;
        let q = unfold_across(tris, from, placed, next, edge);
        let t = &tris[next];
        let ce = t.edges.iter().position(|&e| e == edge).expect("entry edge");
        let x = q[ce];
        let (i, j) = ((ce + 1) % 3, (ce + 2) % 3);
        let o = [0.0, 0.0];
        // Entry endpoints ordered so that `l` is on the `lo` side.
        let (cl, ch) = if orient(o, q[i], q[j]) > 0.0 { (i, j) } else { (j, i) };
        visited[next] = true;
        strip.push((next, q));
        let inside = orient(o, lo, x) > EPS && orient(o, x, hi) > EPS;
        if inside && t.vertices[ce] != src {
            out.push(Sight {
                to: t.vertices[ce],
                length: x[0].hypot(x[1]),
                strip: strip.clone(),
                end: x,
                side_of: None,
            });
        }
        let hi_l = if orient(o, x, hi) > 0.0 { x } else { hi };
        if orient(o, lo, hi_l) > EPS {
            let e = t.edges[ch];
            self.step(src, next, q, e, lo, hi_l, visited, strip, out)?;
        }
        let lo_h = if orient(o, lo, x) > 0.0 { x } else { lo };
        if orient(o, lo_h, hi) > EPS {
            let e = t.edges[cl];
            self.step(src, next, q, e, lo_h, hi, visited, strip, out)?;
        }
        strip.pop();
        visited[next] = false;
        Ok(())
    }
}

#[derive(PartialEq)]
struct Item(f64, usize);

impl Eq for Item {}

impl PartialOrd for Item {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Item {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
    }
}

/// Dijkstra; returns distances and the sight used to reach each vertex.
fn dijkstra(n: usize, from: usize, sights: &[Vec<Sight>], skeleton_only: bool) -> (Vec<f64>, Vec<Option<(usize, usize)>>) {
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[from] = 0.0;
    heap.push(Item(0.0, from));
    while let Some(Item(d, x)) = heap.pop() {
        if d > dist[x] {
            continue;
        }
        for (k, s) in sights[x].iter().enumerate() {
            if skeleton_only && s.side_of.is_none() {
                continue;
            }
            let nd = d + s.length;
            if nd < dist[s.to] - 1e-12 {
                dist[s.to] = nd;
                prev[s.to] = Some((x, k));
                heap.push(Item(nd, s.to));
            }
        }
    }
    (dist, prev)
}

fn barycentric(pts: &[[f64; 2]; 3], z: [f64; 2]) -> [f64; 3] {
    let area = orient(pts[0], pts[1], pts[2]);
    [
        orient(z, pts[1], pts[2]) / area,
        orient(pts[0], z, pts[2]) / area,
        orient(pts[0], pts[1], z) / area,
    ]
}

fn distance_to_line(a: [f64; 2], b: [f64; 2], z: [f64; 2]) -> f64 {
    orient(a, b, z).abs() / (b[0] - a[0]).hypot(b[1] - a[1])
}

/// The part of `τ ↦ τ·end`, `τ ∈ [0, 1]`, inside the triangle, and the point on it farthest
/// from the boundary.
fn chord_clearance(pts: &[[f64; 2]; 3], end: [f64; 2]) -> Option<(f64, [f64; 2])> {
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let o = [0.0, 0.0];
    for c in 0..3 {
        let (a, b) = (pts[(c + 1) % 3], pts[(c + 2) % 3]);
        let side = orient(a, b, pts[c]).signum();
        let f0 = side * orient(a, b, o);
        let f1 = side * orient(a, b, end);
        // f(τ) = f0 + τ (f1 - f0) >= 0
        let slope = f1 - f0;
        if slope.abs() < EPS {
            if f0 < -EPS {
                return None;
            }
            continue;
        }
        let root = -f0 / slope;
        if slope > 0.0 {
            t0 = t0.max(root);
        } else {
            t1 = t1.min(root);
        }
    }
    if t1 <= t0 {
        return None;
    }
    let at = |t: f64| [t * end[0], t * end[1]];
    let clearance = |t: f64| {
        let z = at(t);
        (0..3)
            .map(|c| distance_to_line(pts[(c + 1) % 3], pts[(c + 2) % 3], z))
            .fold(f64::INFINITY, f64::min)
    };
    let (mut a, mut b) = (t0, t1);
    for _ in 0..200 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if clearance(m1) < clearance(m2) {
            a = m1;
        } else {
            b = m2;
        }
    }
    let t = 0.5 * (a + b);
    Some((clearance(t), at(t)))
}

fn to_layout(layout: &[[f64; 2]; 3], bary: [f64; 3]) -> [f64; 2] {
    [
        bary[0] * layout[0][0] + bary[1] * layout[1][0] + bary[2] * layout[2][0],
        bary[0] * layout[0][1] + bary[1] * layout[1][1] + bary[2] * layout[2][1],
    ]
}

fn distance_to_segment(a: [f64; 2], b: [f64; 2], z: [f64; 2]) -> f64 {
    let d = [b[0] - a[0], b[1] - a[1]];
    let t = (((z[0] - a[0]) * d[0] + (z[1] - a[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1])).clamp(0.0, 1.0);
    (a[0] + t * d[0] - z[0]).hypot(a[1] + t * d[1] - z[1])
}

fn tile_centre(p: &PolygonComplex, v: usize) -> Option<TileCentre> {
    if p.vertices[v].kind != DomainVertex::Empty {
        return None;
    }
    let mut first = None;
    let mut clearance = f64::INFINITY;
    for (t, tri) in p.triangles.iter().enumerate() {
        let Some(c) = tri.corner_of(v) else { continue };
        let lay = &p.layout[t];
        clearance = clearance.min(distance_to_segment(lay[(c + 1) % 3], lay[(c + 2) % 3], lay[c]));
        first.get_or_insert((t, c));
    }
    let (t, c) = first?;
    let tri = &p.triangles[t];
    let mut barycentric = [0.0; 3];
    barycentric[c] = 1.0;
    Some(TileCentre {
        tile: tri.tile,
        tile_label: p.translates[tri.tile].display(&p.names).to_string(),
        vertex: p.vertices[v].name.clone(),
        triangle_index: t,
        triangle: triangle_name(p, tri),
        barycentric,
        clearance,
    })
}

fn triangle_name(p: &PolygonComplex, t: &PolygonTriangle) -> String {
    format!("T_{}{}", p.names[t.s], p.names[t.t])
}

/// The geodesic between two vertices of `P` with every triangle it crosses.
pub fn polygon_geodesic(p: &PolygonComplex, from: usize, to: usize, tolerance: f64) -> Result<GeodesicReport> {
    let n = p.vertices.len();
    if from >= n || to >= n {
        return Err(Error::UnknownVertex(format!("polygon vertex {}", from.max(to))));
    }
    let strips = AtomicUsize::new(0);
    let explorer = Explorer { p, strips: &strips };
    let sights: Vec<Vec<Sight>> =
        (0..n).into_par_iter().map(|v| explorer.sights_from(v)).collect::<Result<_>>()?;
    let (dist, prev) = dijkstra(n, from, &sights, false);
    let (skel, _) = dijkstra(n, from, &sights, true);
    if !dist[to].is_finite() {
        return Err(Error::Inconclusive("endpoints are not connected in P".into()));
    }
    let mut chain = Vec::new();
    let mut cur = to;
    while let Some((x, k)) = prev[cur] {
        chain.push((x, k));
        cur = x;
    }
    chain.reverse();

    let mut crossings = Vec::new();
    let tile_centres = chain.iter().skip(1).filter_map(|&(x, _)| tile_centre(p, x)).collect();
    let mut polyline = Vec::new();
    let mut vertices = vec![p.vertices[from].name.clone()];
    for &(x, k) in &chain {
        let s = &sights[x][k];
        vertices.push(p.vertices[s.to].name.clone());
        if let Some(t) = s.side_of {
            let tri = &p.triangles[t];
            let (a, b) = (tri.corner_of(x).expect("side start"), tri.corner_of(s.to).expect("side end"));
            polyline.push([p.layout[t][a], p.layout[t][b]]);
            continue;
        }
        for (t, pts) in &s.strip {
            let Some((clearance, z)) = chord_clearance(pts, s.end) else { continue };
            let tri = &p.triangles[*t];
            let lay = &p.layout[*t];
            let bary = barycentric(pts, z);
            crossings.push(Crossing {
                tile: tri.tile,
                tile_label: p.translates[tri.tile].display(&p.names).to_string(),
                triangle_index: *t,
                triangle: triangle_name(p, tri),
                barycentric: bary,
                clearance,
            });
            if let Some((e0, e1)) = chord_ends(pts, s.end) {
                polyline.push([to_layout(lay, barycentric(pts, e0)), to_layout(lay, barycentric(pts, e1))]);
            }
        }
    }
    let report = GeodesicReport {
        from: p.vertices[from].name.clone(),
        to: p.vertices[to].name.clone(),
        length: dist[to],
        skeleton_length: skel[to],
        vertices,
        crossings,
        tile_centres,
        polyline,
        strips_explored: strips.load(AtomicOrdering::Relaxed),
    };
    if let Some(best) = report.best_crossing() {
        if best.clearance < tolerance {
            return Err(Error::Inconclusive(format!(
                "largest clearance {:.3e} is below the tolerance {tolerance:.1e}",
                best.clearance
            )));
        }
    }
    Ok(report)
}

fn chord_ends(pts: &[[f64; 2]; 3], end: [f64; 2]) -> Option<([f64; 2], [f64; 2])> {
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    let o = [0.0, 0.0];
    for c in 0..3 {
        let (a, b) = (pts[(c + 1) % 3], pts[(c + 2) % 3]);
        let side = orient(a, b, pts[c]).signum();
        let f0 = side * orient(a, b, o);
        let f1 = side * orient(a, b, end);
        let slope = f1 - f0;
        if slope.abs() < EPS {
            continue;
        }
        let root = -f0 / slope;
        if slope > 0.0 {
            t0 = t0.max(root);
        } else {
            t1 = t1.min(root);
        }
    }
    (t1 > t0).then(|| ([t0 * end[0], t0 * end[1]], [t1 * end[0], t1 * end[1]]))
}
