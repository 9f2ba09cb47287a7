//! Finite coordinate models of the shipped spaces.
//!
//! A frame of length `L` over sequences keeps coordinates `0..L` explicitly
//! and one extra slot standing for every index `≥ L`. Elements, homomorphisms
//! and bound functions that are constant beyond `L` are then modeled exactly
//! by finite vectors and matrices.

use crate::error::Result;
use crate::lattice::{Element, SpaceKind};
use crate::scalar::Rat;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Frame {
    pub len: usize,
    pub tail: bool,
}

impl Frame {
    pub fn for_kind(kind: SpaceKind, len: usize) -> Frame {
        match kind {
            SpaceKind::Qn(n) => Frame { len: n, tail: false },
            SpaceKind::EvSeq => Frame { len, tail: true },
            SpaceKind::ZDiscrete => Frame { len: 1, tail: false },
        }
    }

    pub fn size(&self) -> usize {
        self.len + usize::from(self.tail)
    }

    pub fn element(&self, x: &Element) -> Vec<Rat> {
        let (mut head, tail) = x.frame(self.len);
        head.extend(tail);
        head
    }

    pub fn rebuild(&self, like: &Element, mut v: Vec<Rat>) -> Result<Element> {
        let tail = if self.tail { v.pop() } else { None };
        like.like_from_frame(v, tail)
    }
}
