use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::frame::Frame;
use crate::hom::{hom_verdict, HomDesc};
use crate::homspace::converge::{bounds_within, check_base};
use crate::lattice::{Element, EvSeq, FinVec, Multiplication, Space, SpaceKind};
use crate::scalar::Rat;
use crate::topology::{set_group_bounded, set_ring_bounded, GroupVerdict, NbhdDesc, RingVerdict, SetDesc, TopologyId};

/// How "bounded" is read in a topological ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    /// For every `W` some `V` with `V·S ⊆ W`.
    Ring,
    /// For every `U` some `n` with `S ⊆ nU`.
    Group,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReadingPair<T> {
    pub ring: T,
    pub group: T,
}

impl<T> ReadingPair<T> {
    pub fn get(&self, r: Reading) -> &T {
        match r {
            Reading::Ring => &self.ring,
            Reading::Group => &self.group,
        }
    }
}

/// Boundedness of the image of `set`, the hardest set the definition asks about.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BoundedVerdict {
    /// `vacuous`: every subset of the codomain is ring-bounded.
    Bounded {
        set: SetDesc,
        vacuous: bool,
    },
    NotBounded {
        set: SetDesc,
        witness: NbhdDesc,
    },
}

impl BoundedVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, BoundedVerdict::Bounded { .. })
    }
}

/// A rule choosing `U` with `T(U) ⊆ W` for each `W`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ContCert {
    t: HomDesc,
    domain: Space,
    codomain: Space,
}

impl ContCert {
    pub fn u_for(&self, w: &NbhdDesc) -> Result<NbhdDesc> {
        check_base(self.codomain, w)?;
        Ok(needed_u(&self.t, self.domain, w).expect("continuity was decided"))
    }

    /// Exact check of `T(U) ⊆ W`.
    pub fn verify(&self, w: &NbhdDesc, u: &NbhdDesc) -> Result<bool> {
        check_base(self.codomain, w)?;
        let set = SetDesc::nbhd(self.domain, u.clone())?;
        Ok(bounds_within(&SetDesc::image(self.codomain, self.t.clone(), set)?.coordinate_bounds()?, w))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ContVerdict {
    Continuous(ContCert),
    /// No `U` has `T(U) ⊆ witness`.
    NotContinuous {
        witness: NbhdDesc,
    },
}

impl ContVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ContVerdict::Continuous(_))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassLabel {
    pub order_bounded: bool,
    pub modulus: HomDesc,
    pub nr: ReadingPair<BoundedVerdict>,
    pub br: ReadingPair<BoundedVerdict>,
    pub continuous: ContVerdict,
}

/// The four flags of a label under one reading.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Flags {
    pub order_bounded: bool,
    pub nr: bool,
    pub br: bool,
    pub continuous: bool,
}

impl ClassLabel {
    pub fn flags(&self, r: Reading) -> Flags {
        Flags {
            order_bounded: self.order_bounded,
            nr: self.nr.get(r).holds(),
            br: self.br.get(r).holds(),
            continuous: self.continuous.holds(),
        }
    }
}

impl fmt::Display for Flags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order_bounded={} nr={} br={} continuous={}", self.order_bounded, self.nr, self.br, self.continuous)
    }
}

/// The domain base member constraining every coordinate `T` treats
/// individually.
fn tightest_u(t: &HomDesc, domain: Space) -> NbhdDesc {
    match domain.topology() {
        TopologyId::EvSeqProduct => {
            NbhdDesc::Product { coords: (0..t.frame_len().max(1)).collect(), radius: Rat::one() }
        }
        top => NbhdDesc::unit(top, domain.kind()),
    }
}

/// A ring-bounded set of the domain whose image is as large as any.
///
/// Ring-bounded sets with finite bounds all sit in a multiple of the unit
/// interval; under zero multiplication on sequences with the product
/// topology the whole space is ring-bounded.
fn largest_bounded(domain: Space) -> Result<SetDesc> {
    if domain.mul() == Multiplication::Zero && domain.topology() == TopologyId::EvSeqProduct {
        return SetDesc::nbhd(domain, NbhdDesc::Product { coords: Default::default(), radius: Rat::one() });
    }
    let (lo, hi) = match domain.kind() {
        SpaceKind::Qn(n) => {
            let one = Element::Vec(FinVec::new(vec![Rat::one(); n])?);
            (one.neg(), one)
        }
        SpaceKind::EvSeq => {
            let one = Element::Seq(EvSeq::constant(Rat::one()));
            (one.neg(), one)
        }
        SpaceKind::ZDiscrete => (Element::int(-1), Element::int(1)),
    };
    SetDesc::interval(domain, lo, hi)
}

fn image_verdicts(t: &HomDesc, codomain: Space, set: SetDesc) -> Result<ReadingPair<BoundedVerdict>> {
    let image = SetDesc::image(codomain, t.clone(), set.clone())?;
    let ring = match set_ring_bounded(&image)? {
        RingVerdict::Bounded(_) => {
            BoundedVerdict::Bounded { set: set.clone(), vacuous: codomain.mul() == Multiplication::Zero }
        }
        RingVerdict::NotBounded { witness } => BoundedVerdict::NotBounded { set: set.clone(), witness },
    };
    let group = match set_group_bounded(&image)? {
        GroupVerdict::Bounded(_) => BoundedVerdict::Bounded { set: set.clone(), vacuous: false },
        GroupVerdict::NotBounded { witness } => BoundedVerdict::NotBounded { set, witness },
    };
    Ok(ReadingPair { ring, group })
}

/// `T(U)` is bounded in the codomain under `reading`.
pub fn nr_bounded_on(t: &HomDesc, domain: Space, codomain: Space, u: &NbhdDesc, reading: Reading) -> Result<bool> {
    check_base(domain, u)?;
    let v = image_verdicts(t, codomain, SetDesc::nbhd(domain, u.clone())?)?;
    Ok(v.get(reading).holds())
}

/// The smallest-radius `U` with `T(U) ⊆ W`, or `None` when `W` constrains
/// a coordinate fed by infinitely many unconstrainable ones.
fn needed_u(t: &HomDesc, domain: Space, w: &NbhdDesc) -> Option<NbhdDesc> {
    let kind = domain.kind();
    let frame = Frame::for_kind(kind, t.frame_len().max(w.frame_len()));
    let m = t.materialize(frame).map(Rat::abs);
    let n = frame.size();
    let mut need: Vec<Option<Rat>> = vec![None; n];
    for i in 0..n {
        let Some(eps) = w.radius_at(i) else { continue };
        let sum = m.row(i).iter().fold(Rat::zero(), |a, b| a + b);
        if sum.is_zero() {
            continue;
        }
        let r = &eps / &sum;
        for j in (0..n).filter(|&j| !m.get(i, j).is_zero()) {
            need[j] = Some(match need[j].take() {
                Some(old) if old < r => old,
                _ => r.clone(),
            });
        }
    }
    let smallest = need.iter().flatten().min().cloned().unwrap_or_else(Rat::one);
    Some(match domain.topology() {
        TopologyId::QnBox => NbhdDesc::QnBox { radii: need.into_iter().map(|r| r.unwrap_or_else(Rat::one)).collect() },
        TopologyId::EvSeqSupNorm => NbhdDesc::SupNorm { radius: smallest },
        TopologyId::EvSeqProduct => {
            if need[frame.len].is_some() {
                return None;
            }
            NbhdDesc::Product { coords: (0..frame.len).filter(|&j| need[j].is_some()).collect(), radius: smallest }
        }
        TopologyId::ZDiscrete => NbhdDesc::ZeroSingleton,
    })
}

/// Labels `T` as a map from `domain` to `codomain`.
pub fn classify(t: &HomDesc, domain: Space, codomain: Space) -> Result<ClassLabel> {
    let v = hom_verdict(t);
    let nr = image_verdicts(t, codomain, SetDesc::nbhd(domain, tightest_u(t, domain))?)?;
    let br = image_verdicts(t, codomain, largest_bounded(domain)?)?;
    let w = NbhdDesc::unit(codomain.topology(), codomain.kind());
    let continuous = match needed_u(t, domain, &w) {
        Some(_) => ContVerdict::Continuous(ContCert { t: t.clone(), domain, codomain }),
        None => ContVerdict::NotContinuous { witness: NbhdDesc::unit(codomain.topology(), codomain.kind()) },
    };
    Ok(ClassLabel { order_bounded: v.order_bounded, modulus: v.modulus, nr, br, continuous })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::positive_part;

    fn id() -> HomDesc {
        HomDesc::Identity(SpaceKind::EvSeq)
    }

    #[test]
    fn product_identity() {
        let p = Space::product();
        let l = classify(&id(), p, p).unwrap();
        assert_eq!(l.flags(Reading::Ring), Flags { order_bounded: true, nr: false, br: true, continuous: true });
        assert_eq!(l.flags(Reading::Group), l.flags(Reading::Ring));
        let BoundedVerdict::NotBounded { witness, .. } = &l.nr.ring else { panic!() };
        assert_eq!(witness, &NbhdDesc::Product { coords: [1].into(), radius: Rat::one() });
    }

    #[test]
    fn zero_multiplication_identity() {
        let z = Space::evseq(Multiplication::Zero, TopologyId::EvSeqProduct).unwrap();
        let l = classify(&id(), z, z).unwrap();
        assert_eq!(l.flags(Reading::Ring), Flags { order_bounded: true, nr: true, br: true, continuous: true });
        assert!(matches!(l.nr.ring, BoundedVerdict::Bounded { vacuous: true, .. }));
        assert_eq!(l.flags(Reading::Group), Flags { order_bounded: true, nr: false, br: false, continuous: true });
    }

    #[test]
    fn product_into_supnorm() {
        let l = classify(&id(), Space::product(), Space::supnorm()).unwrap();
        assert!(l.order_bounded);
        assert_eq!(l.continuous, ContVerdict::NotContinuous { witness: NbhdDesc::SupNorm { radius: Rat::one() } });
        let l = classify(&id(), Space::supnorm(), Space::product()).unwrap();
        assert!(l.continuous.holds() && l.nr.ring.holds());
    }

    #[test]
    fn continuity_certificates_verify() {
        let t = HomDesc::diag_plus_finite(
            EvSeq::from_ints(&[3], -1),
            crate::hom::RatMatrix::from_ints(&[&[0, 2], &[1, 0]]),
        )
        .unwrap();
        for (d, c) in [
            (Space::product(), Space::product()),
            (Space::supnorm(), Space::supnorm()),
            (Space::supnorm(), Space::product()),
        ] {
            let ContVerdict::Continuous(cert) = classify(&t, d, c).unwrap().continuous else { panic!() };
            for w in [NbhdDesc::unit(c.topology(), c.kind()), nbhd(c, Rat::new(1, 7))] {
                let u = cert.u_for(&w).unwrap();
                assert!(cert.verify(&w, &u).unwrap(), "{w} {u}");
            }
        }
        let q = Space::qn(2);
        let m = HomDesc::matrix_ints(&[&[1, -4], &[0, 2]]);
        let ContVerdict::Continuous(cert) = classify(&m, q, q).unwrap().continuous else { panic!() };
        let w = NbhdDesc::QnBox { radii: vec![Rat::new(1, 3), Rat::from_int(5)] };
        assert!(cert.verify(&w, &cert.u_for(&w).unwrap()).unwrap());
    }

    fn nbhd(s: Space, r: Rat) -> NbhdDesc {
        match s.topology() {
            TopologyId::EvSeqProduct => NbhdDesc::Product { coords: [0, 1, 4].into(), radius: r },
            _ => NbhdDesc::SupNorm { radius: r },
        }
    }

    #[test]
    fn integers() {
        let z = Space::z_discrete();
        let two = HomDesc::ZMul(2.into());
        let l = classify(&two, z, z).unwrap();
        assert_eq!(l.flags(Reading::Ring), Flags { order_bounded: true, nr: true, br: true, continuous: true });
        assert_eq!(l.flags(Reading::Group), Flags { order_bounded: true, nr: true, br: false, continuous: true });
    }

    #[test]
    fn positive_part_keeps_nr_witness() {
        let s = Space::supnorm();
        let t = HomDesc::diag_plus_finite(
            EvSeq::from_ints(&[-2], 1),
            crate::hom::RatMatrix::from_ints(&[&[0, -1], &[3, 0]]),
        )
        .unwrap();
        let u = NbhdDesc::SupNorm { radius: Rat::one() };
        assert!(nr_bounded_on(&t, s, s, &u, Reading::Ring).unwrap());
        assert!(nr_bounded_on(&positive_part(&t), s, s, &u, Reading::Ring).unwrap());
    }
}
