//! The certificate: a vertex with unbounded link orbits and a translate meeting it in a
//! point with trivial stabiliser.

use std::fmt::Write as _;

use serde::Serialize;

use super::ambient::AmbientWord;
use super::cases::{classify_cases, witness_element, Situation};
use super::geodesic::{polygon_geodesic, GeodesicReport, DEFAULT_TOLERANCE};
use super::polygon::{build_polygon, PolygonComplex};
use crate::deligne::DefiningGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossingKind {
    /// The path crosses the open triangle.
    OpenTriangle,
    /// The path runs through the translate of `v_∅` at the named corner.
    TileCentre,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossingPoint {
    pub kind: CrossingKind,
    /// Translate label of the tile.
    pub tile: String,
    pub triangle: String,
    pub triangle_index: usize,
    pub barycentric: [f64; 3],
    /// Distance to the 1-skeleton for an open triangle, to the tile boundary for a centre.
    pub clearance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkOrbitEvidence {
    pub m_ab: u32,
    pub lower_bound_formula: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub situation: Situation,
    pub generators: Vec<String>,
    pub vertex: String,
    pub m_ab: u32,
    pub witness_word: String,
    pub augmented: bool,
    pub crossing: CrossingPoint,
    pub link_orbit_evidence: LinkOrbitEvidence,
    pub geodesic_length: f64,
    pub skeleton_length: f64,
}

/// Everything the pipeline built on the way to a certificate.
#[derive(Debug, Clone)]
pub struct WitnessRun {
    pub polygon: PolygonComplex,
    pub geodesic: GeodesicReport,
    pub certificate: Certificate,
}

fn lower_bound_formula(m: u32) -> String {
    format!("d(x, Δ^n·x) >= (π/{m})·ℓ_S(Δ^n) >= (π/{m})·{}·|n|", m - 2)
}

/// Runs classification, polygon construction and the geodesic.
pub fn run_witness(graph: &DefiningGraph, tolerance: f64) -> Result<WitnessRun> {
    let case = classify_cases(graph)?;
    let polygon = build_polygon(graph, &case)?;
    let geodesic = polygon_geodesic(&polygon, polygon.source, polygon.target, tolerance)?;
    let crossing = if let Some(c) = geodesic.best_crossing() {
        CrossingPoint {
            kind: CrossingKind::OpenTriangle,
            tile: c.tile_label.clone(),
            triangle: c.triangle.clone(),
            triangle_index: c.triangle_index,
            barycentric: c.barycentric,
            clearance: c.clearance,
        }
    } else if let Some(c) = geodesic.tile_centres.iter().max_by(|x, y| x.clearance.total_cmp(&y.clearance)) {
        CrossingPoint {
            kind: CrossingKind::TileCentre,
            tile: c.tile_label.clone(),
            triangle: c.triangle.clone(),
            triangle_index: c.triangle_index,
            barycentric: c.barycentric,
            clearance: c.clearance,
        }
    } else {
        return Err(Error::Inconclusive("the geodesic stays on tile boundaries".into()));
    };
    if crossing.clearance <= tolerance {
        return Err(Error::Inconclusive(format!("clearance {:.3e} is within the tolerance", crossing.clearance)));
    }
    let names = &polygon.names;
    let m_ab = case.m_ab();
    let certificate = Certificate {
        situation: case.situation,
        generators: case.generators.iter().map(|&g| names[g].clone()).collect(),
        vertex: format!("v_{}{}", names[case.a()], names[case.b()]),
        m_ab,
        witness_word: witness_element(&case).display(names).to_string(),
        augmented: case.augmented,
        crossing,
        link_orbit_evidence: LinkOrbitEvidence { m_ab, lower_bound_formula: lower_bound_formula(m_ab) },
        geodesic_length: geodesic.length,
        skeleton_length: geodesic.skeleton_length,
    };
    Ok(WitnessRun { polygon, geodesic, certificate })
}

pub fn emit_certificate(graph: &DefiningGraph) -> Result<Certificate> {
    run_witness(graph, DEFAULT_TOLERANCE).map(|r| r.certificate)
}

/// Nontrivial words in `a, b` with at most `syllables` syllables and exponents up to
/// `max_exponent` in absolute value.
pub fn short_words(a: usize, b: usize, syllables: usize, max_exponent: i64) -> Vec<AmbientWord> {
    let exps: Vec<i64> = (-max_exponent..=max_exponent).filter(|&e| e != 0).collect();
    let mut out = Vec::new();
    let mut layer: Vec<(AmbientWord, Option<usize>)> = vec![(AmbientWord::identity(), None)];
    for _ in 0..syllables {
        let mut next = Vec::new();
        for (w, last) in &layer {
            for g in [a, b] {
                if Some(g) == *last {
                    continue;
                }
                for &e in &exps {
                    let mut letters = AmbientWord::identity();
                    for _ in 0..e.abs() {
                        letters = letters.concat(&AmbientWord::positive(&[g]));
                    }
                    let piece = if e > 0 { letters } else { letters.invert() };
                    next.push((w.concat(&piece), Some(g)));
                }
            }
        }
        out.extend(next.iter().map(|(w, _)| w.clone()));
        layer = next;
    }
    out
}

/// `w` fixes the carrier triangle `g_0·T` iff `g_0^{-1}·w·g_0` lies in the local group of
/// `T`, which is trivial.
pub fn fixes_carrier(run: &WitnessRun, w: &AmbientWord) -> bool {
    let p = &run.polygon;
    let g0 = &p.translates[p.triangles[run.certificate.crossing.triangle_index].tile];
    g0.relative(&w.concat(g0)).is_identity()
}

/// Renders the unfolded polygon and the geodesic.
pub fn render_svg(run: &WitnessRun) -> String {
    const SIZE: f64 = 640.0;
    const PAD: f64 = 20.0;
    let p = &run.polygon;
    let pts = p.layout.iter().flatten().chain(run.geodesic.polyline.iter().flatten());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for q in pts {
        x0 = x0.min(q[0]);
        y0 = y0.min(q[1]);
        x1 = x1.max(q[0]);
        y1 = y1.max(q[1]);
    }
    let scale = (SIZE - 2.0 * PAD) / (x1 - x0).max(y1 - y0).max(1e-9);
    let map = |q: [f64; 2]| (PAD + (q[0] - x0) * scale, PAD + (y1 - q[1]) * scale);
    let width = 2.0 * PAD + (x1 - x0) * scale;
    let height = 2.0 * PAD + (y1 - y0) * scale;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let palette = ["#dbe9f6", "#f6e3db", "#e0f2dc", "#efe0f5", "#f8f2d0", "#d9f1f0", "#f3dbe6", "#e6e6e6"];
    for (t, tri) in p.triangles.iter().enumerate() {
        let corners: Vec<String> = p.layout[t]
            .iter()
            .map(|&q| {
                let (x, y) = map(q);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            svg,
            r##"  <polygon points="{}" fill="{}" stroke="#555" stroke-width="0.8"/>"##,
            corners.join(" "),
            palette[tri.tile % palette.len()]
        );
    }
    for seg in &run.geodesic.polyline {
        let (ax, ay) = map(seg[0]);
        let (bx, by) = map(seg[1]);
        let _ = writeln!(
            svg,
            r##"  <line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="#c0392b" stroke-width="2.5"/>"##
        );
    }
    let c = &run.certificate.crossing;
    let lay = &p.layout[c.triangle_index];
    let b = c.barycentric;
    let z = [
        b[0] * lay[0][0] + b[1] * lay[1][0] + b[2] * lay[2][0],
        b[0] * lay[0][1] + b[1] * lay[1][1] + b[2] * lay[2][1],
    ];
    let (zx, zy) = map(z);
    let _ = writeln!(svg, r##"  <circle cx="{zx:.2}" cy="{zy:.2}" r="4" fill="#c0392b"/>"##);
    for (name, v) in [("from", p.source), ("to", p.target)] {
        let Some((t, tri)) = p.triangles.iter().enumerate().find(|(_, tri)| tri.corner_of(v).is_some()) else {
            continue;
        };
        let (x, y) = map(p.layout[t][tri.corner_of(v).expect("corner")]);
        let _ = writeln!(
            svg,
            r#"  <text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12" data-role="{name}">{}</text>"#,
            x + 5.0,
            y - 5.0,
            p.vertices[v].name
        );
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(names: &[&str], edges: &[(&str, &str, u32)]) -> DefiningGraph {
        DefiningGraph::from_edges(names, edges).unwrap()
    }

    #[test]
    fn triangle_certificate() {
        let g = graph(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3), ("b", "c", 3)]);
        let c = emit_certificate(&g).unwrap();
        assert_eq!(c.situation, Situation::S1);
        assert_eq!(c.witness_word, "c");
        assert_eq!(c.vertex, "v_ab");
        assert_eq!(c.m_ab, 3);
        assert_eq!(c.crossing.kind, CrossingKind::TileCentre);
        assert!(c.link_orbit_evidence.lower_bound_formula.contains("(π/3)·1·|n|"));
    }

    #[test]
    fn square_certificate() {
        let g = graph(&["a", "b", "c", "d"], &[("a", "b", 3), ("b", "c", 2), ("c", "d", 2), ("a", "d", 2)]);
        let c = emit_certificate(&g).unwrap();
        assert_eq!(c.situation, Situation::S4);
        assert_eq!(c.witness_word, "cd");
    }

    #[test]
    fn refusal_passes_through() {
        let g = graph(&["a", "b", "c"], &[("a", "b", 2), ("b", "c", 2)]);
        assert!(matches!(emit_certificate(&g), Err(Error::Refused(_))));
    }

    #[test]
    fn short_word_count() {
        // 2·6 one-syllable words and 2·6·6 two-syllable words.
        assert_eq!(short_words(0, 1, 2, 3).len(), 12 + 72);
    }

    #[test]
    fn carriers_are_not_fixed() {
        let g = graph(&["a", "b", "c"], &[("a", "b", 4), ("a", "c", 2), ("b", "c", 4)]);
        let run = run_witness(&g, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(run.certificate.crossing.kind, CrossingKind::OpenTriangle);
        let (a, b) = (0, 1);
        assert!(short_words(a, b, 2, 3).iter().all(|w| !fixes_carrier(&run, w)));
    }

    #[test]
    fn svg_has_every_triangle() {
        let g = graph(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3), ("b", "c", 3)]);
        let run = run_witness(&g, DEFAULT_TOLERANCE).unwrap();
        let svg = render_svg(&run);
        assert_eq!(svg.matches("<polygon").count(), run.polygon.triangles.len());
        assert!(svg.contains("<line"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }
}
