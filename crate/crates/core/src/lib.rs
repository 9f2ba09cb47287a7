//! Lattice-ordered rings over exact rationals, order bounded homomorphisms
//! between them, and the three topologies on bounded homomorphisms.

pub mod error;
mod frame;
pub mod gallery;
pub mod hom;
pub mod homspace;
pub mod lattice;
pub mod scalar;
pub mod suites;
pub mod topology;

pub use error::{Error, Result};
pub use scalar::Rat;
