//! Combinatorial and geometric core for triangulated 3-manifolds: gluing
//! tables, Pachner moves, canonical signatures, move-graph search, ideal
//! hyperbolic shapes, cusp tori and explicit thickness bounds.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod canon;
pub mod census;
pub mod counts;
pub mod cusp;
pub mod error;
pub mod logreal;
pub mod moves;
pub mod perm;
pub mod search;
pub mod shape;
pub mod shelling;
pub mod triangulation;
pub mod volume;

pub use canon::{canonical_form, canonical_signature, is_isomorphic, Isomorphism, Signature};
pub use counts::{derived_counts, SimplexCounts};
pub use error::{BoundsError, CanonError, GeometryError, MoveError, PermError, ShellingError, TriangulationError};
pub use logreal::LogReal;
pub use moves::{apply, applicable_moves, invert, Move, MoveKind, MoveSequence};
pub use perm::Perm4;
pub use search::{connect, sphere, SearchBudget, SearchError};
pub use shape::ShapeAssignment;
pub use triangulation::{FaceGluings, Gluing, Triangulation, VertexKind};
