//! Small finite buildings: projective spaces `PG(n−1, q)` for `q ∈ {2, 3}`
//! and symplectic polar spaces over GF(2), with their automorphisms.

pub mod automorphism;
pub mod linalg;
pub mod space;

pub use automorphism::{
    enumerate_automorphisms, for_each_automorphism, group_order, parse_automorphism_file, random_automorphism,
    AutomorphismKind, GeometryAutomorphism, VertexAction, ENUMERATION_CAP,
};
pub use linalg::{standard_alternating_form, FiniteField, Matrix, Subspace};
pub use space::{Flag, FlagGeometry, GeometryKind, GeometrySpec, GeometrySummary, CHAMBER_CAP};

use crate::error::Result;

pub fn build_geometry(kind: GeometryKind, n: usize, q: u8) -> Result<FlagGeometry> {
    FlagGeometry::build(GeometrySpec::new(kind, n, q)?)
}

pub fn symplectic_polarity(n: usize, q: u8) -> Result<GeometryAutomorphism> {
    GeometryAutomorphism::symplectic_polarity(n, q)
}
