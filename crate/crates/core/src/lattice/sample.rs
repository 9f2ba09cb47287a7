//! Seeded generators for the randomized law suites.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::element::{EvSeq, FinVec};
use crate::lattice::{Element, SpaceKind};
use crate::scalar::Rat;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_CASES: usize = 1000;

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small signed rational; zero about one time in six.
pub fn rat<R: Rng + ?Sized>(rng: &mut R) -> Rat {
    if rng.gen_ratio(1, 6) {
        return Rat::zero();
    }
    Rat::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn nonneg_rat<R: Rng + ?Sized>(rng: &mut R) -> Rat {
    rat(rng).abs()
}

/// A rational in `[0, 1]`.
pub fn unit_rat<R: Rng + ?Sized>(rng: &mut R) -> Rat {
    let den = rng.gen_range(1..=8);
    Rat::new(rng.gen_range(0..=den), den)
}

pub fn fin_vec<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> FinVec {
    FinVec::new((0..dim).map(|_| rat(rng)).collect()).expect("dim > 0")
}

pub fn ev_seq<R: Rng + ?Sized>(rng: &mut R) -> EvSeq {
    let len = rng.gen_range(0..=5);
    EvSeq::new((0..len).map(|_| rat(rng)).collect(), rat(rng))
}

pub fn element<R: Rng + ?Sized>(rng: &mut R, kind: SpaceKind) -> Element {
    match kind {
        SpaceKind::Qn(n) => Element::Vec(fin_vec(rng, n)),
        SpaceKind::EvSeq => Element::Seq(ev_seq(rng)),
        SpaceKind::ZDiscrete => Element::Int(BigInt::from(rng.gen_range(-20i64..=20))),
    }
}

pub fn nonneg_element<R: Rng + ?Sized>(rng: &mut R, kind: SpaceKind) -> Element {
    element(rng, kind).abs()
}
