//! Defining graphs, the fundamental domain `K_Γ` of the modified Deligne complex and the
//! metric links of its vertices.
//!
//! Angles and link lengths are exact rational multiples of `π`.
//!
//! ```
//! use artin_core::deligne::{empty_link, DefiningGraph};
//! use num_rational::Ratio;
//!
//! let g = DefiningGraph::from_edges(&["a", "b", "c"], &[("a", "b", 3), ("a", "c", 3), ("b", "c", 3)])
//!     .unwrap();
//! assert!(g.is_two_dimensional());
//! assert_eq!(empty_link(&g).systole(), Some(Ratio::from_integer(2)));
//! ```

mod develop;
mod domain;
mod graph;
mod link;

pub use domain::{triangle_angles, DomainComplex, DomainTriangle, DomainVertex, PairGroup};
pub use graph::{Coefficient, DefiningGraph, Dimension, EdgeSpec, GraphSpec};
pub use link::{
    check_link_condition, empty_link, link, two_pi, LinkCheck, LinkEdge, LinkGraph, LinkOptions,
    LinkReport, LinkScope,
};

/// A rational multiple of `π`.
pub type PiMultiple = num_rational::Ratio<i64>;
