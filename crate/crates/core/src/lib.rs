//! Computations in 2-dimensional Artin groups.
//!
//! * [`freeword`]: freely reduced two-letter words.
//! * [`dihedral`]: Garside normal forms in `A_ab = ⟨a, b | (a,b;m) = (b,a;m)⟩`,
//!   syllabic-length bounds and element classification.
//! * [`coset_tree`]: the tree `T` of cosets of `⟨Δ⟩` and its cone-off over generator axes.
//! * [`deligne`]: defining graphs, the modified Deligne complex and exact link systoles.
//! * [`witness`]: the case classifier, the polygon `P` and the geodesic certificate.
//!
//! ```
//! use artin_core::dihedral::DihedralGroup;
//! use artin_core::freeword::parse;
//!
//! let g = DihedralGroup::new(3).unwrap();
//! assert!(g.equal(&parse("a b a").unwrap(), &parse("b a b").unwrap()));
//! ```

pub mod coset_tree;
pub mod deligne;
pub mod dihedral;
pub mod error;
pub mod freeword;
pub mod witness;

pub use error::{Error, Refusal, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/garside.md")]
    mod garside {}
    #[doc = include_str!("../../../book/src/syllabic.md")]
    mod syllabic {}
    #[doc = include_str!("../../../book/src/tree.md")]
    mod tree {}
    #[doc = include_str!("../../../book/src/links.md")]
    mod links {}
    #[doc = include_str!("../../../book/src/witness.md")]
    mod witness {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
