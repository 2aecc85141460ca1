//! Finite simplicial complexes and their integral homology.
//!
//! Orientation convention: a simplex is oriented by increasing vertex id and
//! the face omitting position `i` enters its boundary with sign `(-1)^i`.

mod chain;
mod complex;
mod generators;
mod maps;
mod subdivision;

pub use chain::{homology, ChainComplex, HomologySummary, SparseMatrix};
pub use complex::{subcomplex_ops, ComplexJson, Simplex, SimplicialComplex};
pub use generators::{induced_map, solve_boundary, HomologyBasis, InducedMap};
pub use maps::{induced_homology_map, SimplicialMap};
pub use subdivision::{barycentric_subdivision, Subdivision};
