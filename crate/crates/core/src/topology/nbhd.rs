use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Element, SpaceKind};
use crate::scalar::Rat;
use crate::topology::{Bound, BoundFn, TopologyId};

/// A base zero neighborhood: a closed box.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NbhdDesc {
    QnBox {
        radii: Vec<Rat>,
    },
    /// `U(F, ε) = {x : |x_i| ≤ ε for i ∈ F}`.
    Product {
        coords: BTreeSet<usize>,
        radius: Rat,
    },
    /// `B(ε) = {x : |x_i| ≤ ε for all i}`.
    SupNorm {
        radius: Rat,
    },
    ZeroSingleton,
}

fn positive(r: &Rat) -> Result<()> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidNeighborhood(format!("radius {r} is not positive")))
    }
}

impl NbhdDesc {
    pub fn qn_box(radii: Vec<Rat>) -> Result<NbhdDesc> {
        if radii.is_empty() {
            return Err(Error::InvalidNeighborhood("box without coordinates".into()));
        }
        radii.iter().try_for_each(positive)?;
        Ok(NbhdDesc::QnBox { radii })
    }

    pub fn product(coords: impl IntoIterator<Item = usize>, radius: Rat) -> Result<NbhdDesc> {
        positive(&radius)?;
        Ok(NbhdDesc::Product { coords: coords.into_iter().collect(), radius })
    }

    pub fn supnorm(radius: Rat) -> Result<NbhdDesc> {
        positive(&radius)?;
        Ok(NbhdDesc::SupNorm { radius })
    }

    /// Re-checks the invariants of a descriptor built directly.
    pub fn validate(&self) -> Result<()> {
        match self {
            NbhdDesc::QnBox { radii } => NbhdDesc::qn_box(radii.clone()).map(drop),
            NbhdDesc::Product { radius, .. } | NbhdDesc::SupNorm { radius } => positive(radius),
            NbhdDesc::ZeroSingleton => Ok(()),
        }
    }

    /// The member of the base with every radius 1 (and `F = {0}`).
    pub fn unit(top: TopologyId, kind: SpaceKind) -> NbhdDesc {
        match (top, kind) {
            (TopologyId::QnBox, SpaceKind::Qn(n)) => NbhdDesc::QnBox { radii: vec![Rat::one(); n] },
            (TopologyId::EvSeqProduct, _) => NbhdDesc::Product { coords: [0].into(), radius: Rat::one() },
            (TopologyId::EvSeqSupNorm, _) => NbhdDesc::SupNorm { radius: Rat::one() },
            _ => NbhdDesc::ZeroSingleton,
        }
    }

    pub fn topology(&self) -> TopologyId {
        match self {
            NbhdDesc::QnBox { .. } => TopologyId::QnBox,
            NbhdDesc::Product { .. } => TopologyId::EvSeqProduct,
            NbhdDesc::SupNorm { .. } => TopologyId::EvSeqSupNorm,
            NbhdDesc::ZeroSingleton => TopologyId::ZDiscrete,
        }
    }

    pub fn fits(&self, kind: SpaceKind) -> bool {
        match (self, kind) {
            (NbhdDesc::QnBox { radii }, SpaceKind::Qn(n)) => radii.len() == n,
            (NbhdDesc::Product { .. } | NbhdDesc::SupNorm { .. }, SpaceKind::EvSeq) => true,
            (NbhdDesc::ZeroSingleton, SpaceKind::ZDiscrete) => true,
            _ => false,
        }
    }

    /// The radius constraining coordinate `i`, if any.
    pub fn radius_at(&self, i: usize) -> Option<Rat> {
        match self {
            NbhdDesc::QnBox { radii } => radii.get(i).cloned(),
            NbhdDesc::Product { coords, radius } => coords.contains(&i).then(|| radius.clone()),
            NbhdDesc::SupNorm { radius } => Some(radius.clone()),
            NbhdDesc::ZeroSingleton => Some(Rat::zero()),
        }
    }

    /// The coordinate bounds of the box itself.
    pub fn bounds(&self) -> BoundFn {
        match self {
            NbhdDesc::QnBox { radii } => BoundFn::new(radii.iter().cloned().map(Bound::Finite).collect(), None),
            NbhdDesc::Product { coords, radius } => {
                let len = coords.last().map_or(0, |m| m + 1);
                let head = (0..len)
                    .map(|i| if coords.contains(&i) { Bound::Finite(radius.clone()) } else { Bound::Infinite })
                    .collect();
                BoundFn::new(head, Some(Bound::Infinite))
            }
            NbhdDesc::SupNorm { radius } => BoundFn::new(vec![], Some(Bound::Finite(radius.clone()))),
            NbhdDesc::ZeroSingleton => BoundFn::new(vec![Bound::zero()], None),
        }
    }

    pub fn frame_len(&self) -> usize {
        self.bounds().frame_len()
    }

    /// Closed-box membership.
    pub fn member(&self, x: &Element) -> Result<bool> {
        let ok = match (self, x) {
            (NbhdDesc::QnBox { radii }, Element::Vec(v)) => v.dim() == radii.len(),
            (NbhdDesc::Product { .. } | NbhdDesc::SupNorm { .. }, Element::Seq(_)) => true,
            (NbhdDesc::ZeroSingleton, Element::Int(_)) => true,
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidElement(format!("{x} is not in the space of {self}")));
        }
        let b = self.bounds();
        let len = b.frame_len().max(x.frame_len());
        let (head, tail) = x.frame(len);
        Ok(head.iter().enumerate().all(|(i, xi)| b.at(i).contains(xi)) && tail.is_none_or(|t| b.at(len).contains(&t)))
    }

    /// `n·U`
    pub fn scaled(&self, n: &Rat) -> NbhdDesc {
        match self {
            NbhdDesc::QnBox { radii } => NbhdDesc::QnBox { radii: radii.iter().map(|r| r * n).collect() },
            NbhdDesc::Product { coords, radius } => NbhdDesc::Product { coords: coords.clone(), radius: radius * n },
            NbhdDesc::SupNorm { radius } => NbhdDesc::SupNorm { radius: radius * n },
            NbhdDesc::ZeroSingleton => NbhdDesc::ZeroSingleton,
        }
    }

    /// The set of pointwise products `V·W`, again a box of the same family.
    pub fn times(&self, w: &NbhdDesc) -> Result<NbhdDesc> {
        match (self, w) {
            (NbhdDesc::QnBox { radii: a }, NbhdDesc::QnBox { radii: b }) if a.len() == b.len() => {
                Ok(NbhdDesc::QnBox { radii: a.iter().zip(b).map(|(x, y)| x * y).collect() })
            }
            (NbhdDesc::Product { coords: f, radius: d }, NbhdDesc::Product { coords: g, radius: e }) => {
                Ok(NbhdDesc::Product { coords: f.intersection(g).copied().collect(), radius: d * e })
            }
            (NbhdDesc::SupNorm { radius: d }, NbhdDesc::SupNorm { radius: e }) => {
                Ok(NbhdDesc::SupNorm { radius: d * e })
            }
            (NbhdDesc::ZeroSingleton, NbhdDesc::ZeroSingleton) => Ok(NbhdDesc::ZeroSingleton),
            _ => Err(Error::InvalidNeighborhood(format!("cannot multiply {self} by {w}"))),
        }
    }
}

impl fmt::Display for NbhdDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NbhdDesc::QnBox { radii } => {
                write!(f, "box(")?;
                for (i, r) in radii.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
            NbhdDesc::Product { coords, radius } => {
                write!(f, "U({{")?;
                for (i, c) in coords.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "}}, {radius})")
            }
            NbhdDesc::SupNorm { radius } => write!(f, "B({radius})"),
            NbhdDesc::ZeroSingleton => write!(f, "{{0}}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let x = Element::seq(&[1, -1], 5);
        let u = NbhdDesc::product([0, 1], Rat::one()).unwrap();
        assert!(u.member(&x).unwrap());
        assert!(!NbhdDesc::supnorm(Rat::one()).unwrap().member(&x).unwrap());
        let b = NbhdDesc::qn_box(vec![Rat::from_int(1), Rat::from_int(2)]).unwrap();
        assert!(b.member(&Element::vec(&[1, -2])).unwrap());
        assert!(!b.member(&Element::vec(&[1, 3])).unwrap());
        assert!(b.member(&x).is_err());
    }

    #[test]
    fn radii_must_be_positive() {
        assert!(NbhdDesc::supnorm(Rat::zero()).is_err());
        assert!(NbhdDesc::qn_box(vec![Rat::one(), Rat::from_int(-1)]).is_err());
        assert!(NbhdDesc::product([3], Rat::new(1, 2)).is_ok());
    }

    #[test]
    fn product_of_boxes() {
        let v = NbhdDesc::product([0, 1], Rat::new(1, 2)).unwrap();
        let w = NbhdDesc::product([1, 2], Rat::from_int(4)).unwrap();
        assert_eq!(v.times(&w).unwrap(), NbhdDesc::product([1], Rat::from_int(2)).unwrap());
        assert!(v.times(&NbhdDesc::ZeroSingleton).is_err());
    }

    #[test]
    fn bounds_of_product_nbhd() {
        let u = NbhdDesc::product([0], Rat::from_int(2)).unwrap();
        let b = u.bounds();
        assert_eq!(b.at(0), Bound::Finite(Rat::from_int(2)));
        assert_eq!(b.at(1), Bound::Infinite);
        assert_eq!(b.tail(), Some(&Bound::Infinite));
    }
}
