//! Density theory of doubly periodic disc packings: triangle-local density
//! functions, the ratio-dependent density upper bound, the perturbed
//! two-disc and three-disc packing families with certified critical ratios,
//! explicit torus packings, and their wallpaper groups.
//!
//! The library is organized around the flat-torus picture: a doubly
//! periodic packing is a lattice plus finitely many discs per fundamental
//! region, its density is disc area over cell area, and a packing is
//! *triangulated* when the graph of tangencies has only triangular faces.
//!
//! ```
//! use packdense::{build_ft, classify, roots, triangle, WallpaperGroup};
//!
//! # fn main() -> packdense::Result<()> {
//! // the density bound at the base ratio of the two-disc family
//! let q1 = roots::q1();
//! assert!(triangle::florian_bound(q1)? > triangle::HEX_DENSITY);
//!
//! // the family packing at q1 is triangulated with group cmm
//! let packing = build_ft(q1)?;
//! assert!(packing.contact_graph(packdense::packing::CONTACT_TOL).triangulated);
//! assert_eq!(classify(&packing)?, WallpaperGroup::cmm);
//! # Ok(())
//! # }
//! ```

// `!(a < b)` idioms are deliberate: they reject NaN where `a >= b` would not
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod f53;
pub mod ft;
pub mod packing;
pub mod plot;
pub mod render;
pub mod roots;
pub mod symmetry;
pub mod triangle;

pub use error::{Error, Result};
pub use packing::{build_f53, build_ft, build_hexagonal, TorusPacking};
pub use symmetry::{classify, find_symmetries, orbifold_ratio, WallpaperGroup};
pub use triangle::HEX_DENSITY;
