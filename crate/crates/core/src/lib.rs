//! Finite simplicial complexes with Alexander duality relative to arbitrary
//! ground sets, exact reduced homology over GF(2) and the integers,
//! collapsibility search and recognition of NH-manifolds, NH-balls and
//! NH-spheres.
//!
//! Complexes are stored by their facets. The void complex (no faces at all)
//! and `{∅}` (only the empty face) are distinct values, see
//! [`SimplicialComplex::void`] and [`SimplicialComplex::empty_face`].

pub mod alexander;
pub mod collapse;
pub mod complex;
pub mod document;
mod error;
pub mod generators;
pub mod homology;
pub mod recognition;
mod simplex;
mod tristate;

pub use complex::{SimplicialComplex, StructureReport};
pub use error::{Error, Result};
pub use simplex::{GroundSet, Simplex, Vertex, FRESH_BASE, MAX_VERTICES};
pub use tristate::{Obstruction, TriState};
