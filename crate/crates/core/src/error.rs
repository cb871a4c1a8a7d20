//! Error types for the core crate.


use thiserror::Error;

use crate::moves::Move;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation images {0:?} are not a bijection of {{0,1,2,3}}")]
    NotBijection([u8; 4]),
    #[error("permutation must be four digits")]
    Malformed,
}

/// Structural problems that prevent a gluing table from forming a triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("a triangulation needs at least one tetrahedron")]
    Empty,
    #[error("gluing of tetrahedron {tet} face {face} targets tetrahedron {target}, but there are only {tet_count}")]
    TargetOutOfRange { tet: usize, face: usize, target: usize, tet_count: usize },
    #[error("tetrahedron {tet} face {face} is glued to itself by the identity")]
    SelfIdentityGluing { tet: usize, face: usize },
    #[error("gluing of tetrahedron {tet} face {face} is not matched by the reverse gluing")]
    InvolutionViolation { tet: usize, face: usize },
    #[error("tetrahedron {tet} face {face} is unglued")]
    UngluedFace { tet: usize, face: usize },
    #[error("face {face} of simplex {tet} is shared by more than two simplices")]
    OverfullFace { tet: usize, face: usize },
    #[error("simplex {0} repeats a vertex")]
    DegenerateSimplex(usize),
}

/// Reasons a Pachner move cannot be applied.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move {0} refers to a tetrahedron, face, edge or vertex that does not exist")]
    OutOfRange(Move),
    #[error("move {mv} is not applicable: {reason}")]
    Inapplicable { mv: Move, reason: &'static str },
    #[error("retriangulation produced an invalid gluing table: {0}")]
    Rebuild(#[from] TriangulationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellingError {
    #[error("ordering is not a shelling: failure at position {index}")]
    NotShelling { index: usize },
    #[error("ordering must list every tetrahedron exactly once")]
    BadOrdering,
    #[error("the complex is not simplicial, so shellings are undefined")]
    NotSimplicial,
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Canon(#[from] CanonError),
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error("starring did not produce the cone over the boundary")]
    ConeMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("triangulation is disconnected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("shape parameter has non-positive imaginary part: {re} + {im}i")]
    NonPositiveImaginary { re: f64, im: f64 },
    #[error("expected {expected} shapes, got {got}")]
    ShapeCount { expected: usize, got: usize },
    #[error("theta0 = {0} lies outside (0, pi/3]")]
    ThetaOutOfRange(f64),
    #[error("radius must be non-negative, got {0}")]
    NegativeRadius(f64),
    #[error("height must be positive and offset non-negative, got x = {x}, y = {y}")]
    BadHalfPlanePoint { x: f64, y: f64 },
    #[error("vertex class {0} does not exist or is not ideal")]
    NotACusp(usize),
    #[error("cusp {cusp} link is not a torus (euler characteristic {euler}, closed: {closed})")]
    NonTorusLink { cusp: usize, euler: i64, closed: bool },
    #[error("cusp {cusp} has rotational holonomy {deviation:e}")]
    RotationalHolonomy { cusp: usize, deviation: f64 },
    #[error("gluing residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("cusp {0} translations do not span a lattice")]
    DegenerateLattice(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange { name: &'static str, value: f64, expected: &'static str },
    #[error("tetrahedron count must be at least {min}, got {got}")]
    TooFewTetrahedra { min: u64, got: u64 },
}
