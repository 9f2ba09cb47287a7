//! Exact ℓ-group / ℓ-ring kernel: elements, the shipped spaces and the
//! algebraic axiom checkers.

mod element;
mod ring;
pub mod sample;
mod space;

pub use element::{Element, EvSeq, FinVec};
pub use ring::{
    archimedean_witness, check_f_ring, f_ring_samples, Archimedean, FRingSide, FRingVerdict, LatticeRing, MatrixRing2,
};
pub use space::{Multiplication, Space, SpaceKind};
