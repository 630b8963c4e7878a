//! The case classifier, the polygon `P` of tile translates, its geodesics and the
//! malnormality certificate.

mod ambient;
mod cases;
mod certificate;
mod geodesic;
mod polygon;

pub use ambient::{AmbientDisplay, AmbientWord};
pub use cases::{admissible, classify_cases, translates, witness_element, CaseResult, Situation};
pub use certificate::{
    emit_certificate, fixes_carrier, render_svg, run_witness, short_words, Certificate, CrossingKind, CrossingPoint,
    LinkOrbitEvidence, WitnessRun,
};
pub use geodesic::{polygon_geodesic, Crossing, GeodesicReport, TileCentre, DEFAULT_TOLERANCE, STRIP_CAP};
pub use polygon::{build_polygon, vertex_link, PolygonComplex, PolygonTriangle, PolygonVertex, Tile};
