use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::element::{EvSeq, FinVec};
use crate::lattice::Element;
use crate::topology::TopologyId;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SpaceKind {
    /// ℚⁿ with coordinatewise order.
    Qn(usize),
    /// Eventually constant rational sequences, a stand-in for ℝ^ℕ and ℓ∞.
    EvSeq,
    /// ℤ with the discrete topology.
    ZDiscrete,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Multiplication {
    Pointwise,
    /// Every product is zero.
    Zero,
}

/// A concrete topological ℓ-ring: carrier, multiplication and topology.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Space {
    kind: SpaceKind,
    mul: Multiplication,
    topology: TopologyId,
}

impl Space {
    pub fn new(kind: SpaceKind, mul: Multiplication, topology: TopologyId) -> Result<Space> {
        let topology_ok = match kind {
            SpaceKind::Qn(n) => n > 0 && topology == TopologyId::QnBox,
            SpaceKind::EvSeq => {
                matches!(topology, TopologyId::EvSeqProduct | TopologyId::EvSeqSupNorm)
            }
            SpaceKind::ZDiscrete => topology == TopologyId::ZDiscrete,
        };
        if !topology_ok {
            return Err(Error::InvalidArgument(format!("topology {topology} does not fit {kind}")));
        }
        if kind == SpaceKind::ZDiscrete && mul != Multiplication::Pointwise {
            return Err(Error::InvalidArgument("the integers only carry pointwise multiplication".into()));
        }
        Ok(Space { kind, mul, topology })
    }

    pub fn qn(n: usize) -> Space {
        Space::new(SpaceKind::Qn(n), Multiplication::Pointwise, TopologyId::QnBox).expect("n > 0")
    }

    pub fn evseq(mul: Multiplication, topology: TopologyId) -> Result<Space> {
        Space::new(SpaceKind::EvSeq, mul, topology)
    }

    pub fn product() -> Space {
        Space::new(SpaceKind::EvSeq, Multiplication::Pointwise, TopologyId::EvSeqProduct).unwrap()
    }

    pub fn supnorm() -> Space {
        Space::new(SpaceKind::EvSeq, Multiplication::Pointwise, TopologyId::EvSeqSupNorm).unwrap()
    }

    pub fn z_discrete() -> Space {
        Space::new(SpaceKind::ZDiscrete, Multiplication::Pointwise, TopologyId::ZDiscrete).unwrap()
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn mul(&self) -> Multiplication {
        self.mul
    }

    pub fn topology(&self) -> TopologyId {
        self.topology
    }

    pub fn with_topology(&self, topology: TopologyId) -> Result<Space> {
        Space::new(self.kind, self.mul, topology)
    }

    pub fn with_mul(&self, mul: Multiplication) -> Result<Space> {
        Space::new(self.kind, mul, self.topology)
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        let ok = match (self.kind, x) {
            (SpaceKind::Qn(n), Element::Vec(v)) => v.dim() == n,
            (SpaceKind::EvSeq, Element::Seq(_)) => true,
            (SpaceKind::ZDiscrete, Element::Int(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{x} is not an element of {}", self.kind)))
        }
    }

    fn check2(&self, x: &Element, y: &Element) -> Result<()> {
        self.check(x)?;
        self.check(y)
    }

    pub fn zero(&self) -> Element {
        match self.kind {
            SpaceKind::Qn(n) => Element::Vec(FinVec::zero(n)),
            SpaceKind::EvSeq => Element::Seq(EvSeq::zero()),
            SpaceKind::ZDiscrete => Element::int(0),
        }
    }

    pub fn join(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check2(x, y)?;
        x.join(y)
    }

    pub fn meet(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check2(x, y)?;
        x.meet(y)
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check2(x, y)?;
        x.add(y)
    }

    pub fn sub(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check2(x, y)?;
        x.sub(y)
    }

    pub fn leq(&self, x: &Element, y: &Element) -> Result<bool> {
        self.check2(x, y)?;
        x.leq(y)
    }

    /// `x⁺ = x ∨ 0`
    pub fn pos_part(&self, x: &Element) -> Result<Element> {
        self.join(x, &self.zero())
    }

    /// `x⁻ = (−x) ∨ 0`
    pub fn neg_part(&self, x: &Element) -> Result<Element> {
        self.join(&x.neg(), &self.zero())
    }

    /// `|x| = x ∨ (−x)`
    pub fn abs_val(&self, x: &Element) -> Result<Element> {
        self.join(x, &x.neg())
    }

    pub fn ring_mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check2(x, y)?;
        match self.mul {
            Multiplication::Pointwise => x.zip_with(y, |a, b| a * b),
            Multiplication::Zero => Ok(self.zero()),
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Qn(n) => write!(f, "Q^{n}"),
            SpaceKind::EvSeq => write!(f, "EVSEQ"),
            SpaceKind::ZDiscrete => write!(f, "Z"),
        }
    }
}

impl fmt::Display for Multiplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplication::Pointwise => write!(f, "pointwise"),
            Multiplication::Zero => write!(f, "zero"),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} multiplication, {})", self.kind, self.mul, self.topology)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn validation() {
        assert!(Space::new(SpaceKind::ZDiscrete, Multiplication::Zero, TopologyId::ZDiscrete).is_err());
        assert!(Space::new(SpaceKind::EvSeq, Multiplication::Zero, TopologyId::EvSeqProduct).is_ok());
        assert!(Space::new(SpaceKind::Qn(2), Multiplication::Pointwise, TopologyId::EvSeqSupNorm).is_err());
        assert!(Space::new(SpaceKind::Qn(0), Multiplication::Pointwise, TopologyId::QnBox).is_err());
    }

    #[test]
    fn join_meet_examples() {
        let q2 = Space::qn(2);
        let (x, y) = (Element::vec(&[1, -2]), Element::vec(&[0, 3]));
        assert_eq!(q2.join(&x, &y).unwrap(), Element::vec(&[1, 3]));
        assert_eq!(q2.meet(&x, &y).unwrap(), Element::vec(&[0, -2]));
        assert_eq!(q2.join(&x, &x).unwrap(), x);
        assert!(q2.join(&x, &Element::vec(&[1, 2, 3])).is_err());
        let s = Space::product();
        let a = Element::seq(&[3, -1], 2);
        assert_eq!(s.meet(&a, &a).unwrap(), a);
    }

    #[test]
    fn parts_example() {
        let q3 = Space::qn(3);
        let x = Element::vec(&[2, -3, 0]);
        assert_eq!(q3.pos_part(&x).unwrap(), Element::vec(&[2, 0, 0]));
        assert_eq!(q3.neg_part(&x).unwrap(), Element::vec(&[0, 3, 0]));
        assert_eq!(q3.abs_val(&x).unwrap(), Element::vec(&[2, 3, 0]));
    }

    #[test]
    fn ring_mul_examples() {
        let q2 = Space::qn(2);
        let p = q2.ring_mul(&Element::vec(&[1, -2]), &Element::vec(&[3, 4])).unwrap();
        assert_eq!(p, Element::vec(&[3, -8]));
        let z = Space::evseq(Multiplication::Zero, TopologyId::EvSeqProduct).unwrap();
        let x = Element::Seq(EvSeq::new(vec![Rat::new(1, 2)], Rat::from_int(7)));
        assert_eq!(z.ring_mul(&x, &x).unwrap(), z.zero());
    }
}
