use rand::RngCore;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::hom::HomDesc;
use crate::lattice::Element;
use crate::scalar::Rat;
use crate::topology::set::signed_fraction;

/// `T⁺ = T ∨ 0`. For every shipped form this is the entrywise positive
/// part of the map's matrix.
pub fn positive_part(t: &HomDesc) -> HomDesc {
    t.map_entries(Rat::pos)
}

/// `T⁻ = (−T)⁺`
pub fn negative_part(t: &HomDesc) -> HomDesc {
    positive_part(&t.neg())
}

/// `|T| = T⁺ + T⁻`
pub fn modulus(t: &HomDesc) -> HomDesc {
    positive_part(t).add(&negative_part(t)).expect("same space")
}

/// `T ∨ S = (T − S)⁺ + S`
pub fn hom_join(t: &HomDesc, s: &HomDesc) -> Result<HomDesc> {
    positive_part(&t.sub(s)?).add(s)
}

/// `T ∧ S = −((−T) ∨ (−S))`
pub fn hom_meet(t: &HomDesc, s: &HomDesc) -> Result<HomDesc> {
    Ok(hom_join(&t.neg(), &s.neg())?.neg())
}

/// The supremum of a finite family, bounded above by `bound`.
///
/// The join-closure of a finite family is directed and has the join of all
/// members as its largest element, so that join is the supremum.
pub fn directed_sup(homs: &[HomDesc], bound: &HomDesc) -> Result<HomDesc> {
    let (first, rest) = homs.split_first().ok_or(Error::EmptyInput("directed family"))?;
    for (index, t) in homs.iter().enumerate() {
        if !t.leq(bound)? {
            return Err(Error::NotBoundedAbove { index });
        }
    }
    rest.iter().try_fold(first.clone(), |acc, t| hom_join(&acc, t))
}

/// Classification flags available from the operator order alone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomVerdict {
    pub order_bounded: bool,
    pub positive: bool,
    /// `|T|`: `T[−p, p] ⊆ [−|T|p, |T|p]` for every `p ≥ 0`.
    pub modulus: HomDesc,
}

pub fn hom_verdict(t: &HomDesc) -> HomVerdict {
    HomVerdict { order_bounded: true, positive: t.is_positive(), modulus: modulus(t) }
}

/// An interval containing `T[−probe, probe]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderBound {
    pub bounded: bool,
    pub lo: Element,
    pub hi: Element,
}

pub fn is_order_bounded(t: &HomDesc, probe: &Element) -> Result<OrderBound> {
    if !probe.is_nonneg() {
        return Err(Error::InvalidArgument(format!("probe {probe} is not positive")));
    }
    let hi = modulus(t).apply(probe)?;
    Ok(OrderBound { bounded: true, lo: hi.neg(), hi })
}

/// Samples `y` with `|y| ≤ probe` and checks `Ty` lands in the witness interval.
pub fn spot_check_order_bound(t: &HomDesc, probe: &Element, rng: &mut dyn RngCore, n: usize) -> Result<usize> {
    let b = is_order_bounded(t, probe)?;
    let frame = t.frame_for(probe.frame_len());
    let integral = matches!(probe, Element::Int(_));
    for _ in 0..n {
        let y = frame.element(probe).iter().map(|p| signed_fraction(rng, p, integral)).collect();
        let y = frame.rebuild(probe, y)?;
        let ty = t.apply(&y)?;
        if !(b.lo.leq(&ty)? && ty.leq(&b.hi)?) {
            return Err(Error::SoundnessBug(format!("T({y}) = {ty} escapes [{}, {}]", b.lo, b.hi)));
        }
    }
    Ok(n)
}

pub(crate) fn frame_of(t: &HomDesc, x: &Element) -> Frame {
    t.frame_for(x.frame_len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::RatMatrix;
    use crate::lattice::{sample, EvSeq, SpaceKind};

    fn t() -> HomDesc {
        HomDesc::matrix_ints(&[&[1, -2], &[-3, 4]])
    }

    #[test]
    fn parts_of_example_matrix() {
        assert_eq!(positive_part(&t()), HomDesc::matrix_ints(&[&[1, 0], &[0, 4]]));
        assert_eq!(negative_part(&t()), HomDesc::matrix_ints(&[&[0, 2], &[3, 0]]));
        assert_eq!(modulus(&t()), HomDesc::matrix_ints(&[&[1, 2], &[3, 4]]));
        assert_eq!(positive_part(&t()).sub(&negative_part(&t())).unwrap(), t());
        assert_eq!(hom_join(&t(), &t()).unwrap(), t());
        assert_eq!(hom_meet(&t(), &HomDesc::zero(SpaceKind::Qn(2))).unwrap(), negative_part(&t()).neg());
    }

    #[test]
    fn diagonal_positive_part() {
        let d = HomDesc::Diagonal(EvSeq::from_ints(&[-1, 2], -3));
        assert_eq!(positive_part(&d), HomDesc::Diagonal(EvSeq::from_ints(&[0, 2], 0)));
    }

    #[test]
    fn directed_sup_examples() {
        let a = HomDesc::matrix_ints(&[&[1, 0], &[0, 0]]);
        let b = HomDesc::matrix_ints(&[&[0, 0], &[0, 1]]);
        let id = HomDesc::Matrix(RatMatrix::identity(2));
        assert_eq!(directed_sup(&[a.clone(), b], &id).unwrap(), id);
        assert_eq!(directed_sup(&[t()], &modulus(&t())).unwrap(), t());
        let tp = positive_part(&t());
        assert_eq!(directed_sup(&[t(), tp.clone()], &tp).unwrap(), tp);
        assert_eq!(directed_sup(&[a, t()], &t()), Err(Error::NotBoundedAbove { index: 0 }));
        assert!(matches!(directed_sup(&[], &t()), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn order_bound_witnesses() {
        let mut r = sample::rng(4);
        let b = is_order_bounded(&t(), &Element::vec(&[1, 1])).unwrap();
        assert_eq!(b.hi, Element::vec(&[3, 7]));
        spot_check_order_bound(&t(), &Element::vec(&[1, 1]), &mut r, 100).unwrap();
        let p = Element::seq(&[2, 1], 3);
        let id = HomDesc::Identity(SpaceKind::EvSeq);
        assert_eq!(is_order_bounded(&id, &p).unwrap().hi, p);
        let d = HomDesc::Diagonal(EvSeq::from_ints(&[-2], 5));
        assert_eq!(is_order_bounded(&d, &p).unwrap().hi, Element::seq(&[4, 5], 15));
        spot_check_order_bound(&d, &p, &mut r, 100).unwrap();
        assert!(is_order_bounded(&d, &p.neg()).is_err());
    }
}
