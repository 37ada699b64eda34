//! Cubic-lattice knot library.
//!
//! Models closed axis-aligned polygons in the cubic lattice, normalizes them
//! to properly leveled form, projects them to knot diagrams, computes exact
//! Kauffman bracket / Jones invariants, and runs an exhaustive symmetry-reduced
//! census of properly leveled polygons by stick count.

pub mod census;
pub mod diagram;
pub mod invariants;
pub mod lattice;
pub mod laurent;
pub mod leveling;
pub mod symmetry;

pub use lattice::{Axis, Composition, LatticePoint, LatticePolygon, PolygonError, Stick};
pub use laurent::LaurentPoly;
pub use symmetry::LatticeSymmetry;
