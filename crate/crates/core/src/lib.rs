//! Opposition diagrams of automorphisms of spherical buildings.
//!
//! * [`coxeter`]: root systems, longest elements, opposition involutions, double cosets.
//! * [`diagrams`]: admissible diagrams, closed-form tables, displacement.
//! * [`geometry`]: projective and symplectic polar spaces over GF(2) and GF(3).
//! * [`engine`]: Weyl distances, Opp(θ), Type(θ), cappedness and displacement.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod coxeter;
pub mod diagrams;
pub mod error;
pub mod engine;
pub mod geometry;

pub use error::{Error, Result};
