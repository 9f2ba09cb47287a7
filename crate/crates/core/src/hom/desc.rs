use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::hom::RatMatrix;
use crate::lattice::{Element, EvSeq, FinVec, SpaceKind};
use crate::scalar::Rat;

/// A group homomorphism of one of the shipped forms.
///
/// Equality is equality of the maps: descriptions are compared through
/// [`HomDesc::canonical`].
#[derive(Clone, Debug)]
pub enum HomDesc {
    /// An n×n matrix acting on ℚⁿ.
    Matrix(RatMatrix),
    /// Index-wise multiplication by a sequence.
    Diagonal(EvSeq),
    /// `Diagonal(diag)` plus a k×k matrix acting on the first k coordinates.
    DiagPlusFinite {
        diag: EvSeq,
        block: RatMatrix,
    },
    Identity(SpaceKind),
    /// Multiplication by an integer on ℤ.
    ZMul(BigInt),
}

impl HomDesc {
    pub fn matrix(m: RatMatrix) -> Result<HomDesc> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::InvalidArgument(format!("a {}x{} matrix is not a square form", m.rows(), m.cols())));
        }
        Ok(HomDesc::Matrix(m))
    }

    pub fn matrix_ints(rows: &[&[i64]]) -> HomDesc {
        HomDesc::matrix(RatMatrix::from_ints(rows)).expect("square literal")
    }

    pub fn diag_plus_finite(diag: EvSeq, block: RatMatrix) -> Result<HomDesc> {
        if !block.is_square() {
            return Err(Error::InvalidArgument("finite block must be square".into()));
        }
        Ok(HomDesc::DiagPlusFinite { diag, block })
    }

    pub fn zero(kind: SpaceKind) -> HomDesc {
        match kind {
            SpaceKind::Qn(n) => HomDesc::Matrix(RatMatrix::zeros(n, n)),
            SpaceKind::EvSeq => HomDesc::Diagonal(EvSeq::zero()),
            SpaceKind::ZDiscrete => HomDesc::ZMul(BigInt::from(0)),
        }
    }

    pub fn kind(&self) -> SpaceKind {
        match self {
            HomDesc::Matrix(m) => SpaceKind::Qn(m.rows()),
            HomDesc::Diagonal(_) | HomDesc::DiagPlusFinite { .. } => SpaceKind::EvSeq,
            HomDesc::Identity(k) => *k,
            HomDesc::ZMul(_) => SpaceKind::ZDiscrete,
        }
    }

    /// Explicit coordinates this description needs in a frame.
    pub fn frame_len(&self) -> usize {
        match self {
            HomDesc::Matrix(m) => m.rows(),
            HomDesc::Diagonal(a) => a.prefix().len(),
            HomDesc::DiagPlusFinite { diag, block } => diag.prefix().len().max(block.rows()),
            HomDesc::Identity(SpaceKind::Qn(n)) => *n,
            HomDesc::Identity(_) | HomDesc::ZMul(_) => match self.kind() {
                SpaceKind::ZDiscrete => 1,
                _ => 0,
            },
        }
    }

    /// The matrix of this map on `frame`; for sequences the last row and
    /// column belong to the tail slot.
    pub(crate) fn materialize(&self, frame: Frame) -> RatMatrix {
        let n = frame.size();
        match self {
            HomDesc::Matrix(m) => m.clone(),
            HomDesc::Identity(_) => RatMatrix::identity(n),
            HomDesc::ZMul(c) => RatMatrix::from_fn(1, 1, |_, _| Rat::from_bigint(c.clone())),
            HomDesc::Diagonal(a) => RatMatrix::from_fn(n, n, |i, j| if i == j { a.at(i).clone() } else { Rat::zero() }),
            HomDesc::DiagPlusFinite { diag, block } => {
                let k = block.rows();
                RatMatrix::from_fn(n, n, |i, j| {
                    let d = if i == j { diag.at(i).clone() } else { Rat::zero() };
                    if i < k && j < k && i < frame.len && j < frame.len {
                        d + block.get(i, j)
                    } else {
                        d
                    }
                })
            }
        }
    }

    /// Inverse of [`HomDesc::materialize`]; returns the canonical form.
    pub(crate) fn from_frame_matrix(kind: SpaceKind, frame: Frame, m: RatMatrix) -> Result<HomDesc> {
        match kind {
            SpaceKind::Qn(_) => HomDesc::matrix(m),
            SpaceKind::ZDiscrete => {
                let c = m.get(0, 0);
                if !c.is_integer() {
                    return Err(Error::InvalidArgument(format!("{c} does not map the integers to themselves")));
                }
                Ok(HomDesc::ZMul(c.numer()))
            }
            SpaceKind::EvSeq => {
                let l = frame.len;
                for s in 0..l {
                    if !m.get(l, s).is_zero() || !m.get(s, l).is_zero() {
                        return Err(Error::InvalidArgument("tail slot couples with explicit coordinates".into()));
                    }
                }
                let diag = EvSeq::new((0..l).map(|i| m.get(i, i).clone()).collect(), m.get(l, l).clone());
                let k = (0..l)
                    .flat_map(|i| (0..l).map(move |j| (i, j)))
                    .filter(|&(i, j)| i != j && !m.get(i, j).is_zero())
                    .map(|(i, j)| i.max(j) + 1)
                    .max()
                    .unwrap_or(0);
                if k == 0 {
                    return Ok(HomDesc::Diagonal(diag));
                }
                let block = RatMatrix::from_fn(k, k, |i, j| if i == j { Rat::zero() } else { m.get(i, j).clone() });
                Ok(HomDesc::DiagPlusFinite { diag, block })
            }
        }
    }

    pub(crate) fn frame_for(&self, extra: usize) -> Frame {
        Frame::for_kind(self.kind(), self.frame_len().max(extra))
    }

    /// The unique normal form of this map: identities become matrices or
    /// diagonals; finite blocks lose their diagonal (absorbed into the
    /// sequence) and are trimmed to their smallest size.
    pub fn canonical(&self) -> HomDesc {
        match self {
            HomDesc::Matrix(_) | HomDesc::ZMul(_) => self.clone(),
            HomDesc::Diagonal(a) => HomDesc::Diagonal(a.canonicalize()),
            _ => {
                let frame = self.frame_for(0);
                HomDesc::from_frame_matrix(self.kind(), frame, self.materialize(frame))
                    .expect("materialized form is well shaped")
            }
        }
    }

    pub(crate) fn check_kind(&self, x: &Element) -> Result<()> {
        let ok = match (self.kind(), x) {
            (SpaceKind::Qn(n), Element::Vec(v)) => v.dim() == n,
            (SpaceKind::EvSeq, Element::Seq(_)) | (SpaceKind::ZDiscrete, Element::Int(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{x} is not in the domain ({})", self.kind())))
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.check_kind(x)?;
        match (self, x) {
            (HomDesc::Identity(_), _) => Ok(x.clone()),
            (HomDesc::Matrix(m), Element::Vec(v)) => Ok(Element::Vec(FinVec::new(m.mul_vec(v.entries()))?)),
            (HomDesc::Diagonal(a), Element::Seq(s)) => Ok(Element::Seq(a.zip_with(s, |p, q| p * q))),
            (HomDesc::ZMul(c), Element::Int(n)) => Ok(Element::Int(c * n)),
            _ => {
                let frame = self.frame_for(x.frame_len());
                let y = self.materialize(frame).mul_vec(&frame.element(x));
                frame.rebuild(x, y)
            }
        }
    }

    fn same_kind(&self, other: &HomDesc) -> Result<SpaceKind> {
        if self.kind() != other.kind() {
            return Err(Error::InvalidElement(format!(
                "homomorphisms on different spaces: {} vs {}",
                self.kind(),
                other.kind()
            )));
        }
        Ok(self.kind())
    }

    fn combine(&self, other: &HomDesc, f: impl Fn(&RatMatrix, &RatMatrix) -> Result<RatMatrix>) -> Result<HomDesc> {
        let kind = self.same_kind(other)?;
        let frame = Frame::for_kind(kind, self.frame_len().max(other.frame_len()));
        let m = f(&self.materialize(frame), &other.materialize(frame))?;
        HomDesc::from_frame_matrix(kind, frame, m)
    }

    /// Entrywise transform of the map's matrix; `f(0)` must be `0`.
    pub(crate) fn map_entries(&self, f: impl Fn(&Rat) -> Rat) -> HomDesc {
        let frame = self.frame_for(0);
        HomDesc::from_frame_matrix(self.kind(), frame, self.materialize(frame).map(f)).expect("same shape")
    }

    pub fn add(&self, other: &HomDesc) -> Result<HomDesc> {
        self.combine(other, |a, b| a.zip_with(b, |x, y| x + y))
    }

    pub fn sub(&self, other: &HomDesc) -> Result<HomDesc> {
        self.combine(other, |a, b| a.zip_with(b, |x, y| x - y))
    }

    pub fn neg(&self) -> HomDesc {
        self.map_entries(|x| -x)
    }

    pub fn scale(&self, c: &Rat) -> Result<HomDesc> {
        if self.kind() == SpaceKind::ZDiscrete && !c.is_integer() {
            return Err(Error::InvalidArgument(format!("cannot scale an integer map by {c}")));
        }
        Ok(self.map_entries(|x| x * c))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &HomDesc) -> Result<HomDesc> {
        self.combine(other, |a, b| a.matmul(b))
    }

    /// Entrywise `|T|`: the modulus for the shipped forms.
    pub fn abs_entries(&self) -> HomDesc {
        self.map_entries(Rat::abs)
    }

    pub fn is_positive(&self) -> bool {
        let frame = self.frame_for(0);
        self.materialize(frame).is_nonneg()
    }

    pub fn is_zero(&self) -> bool {
        let frame = self.frame_for(0);
        self.materialize(frame).is_zero()
    }

    /// `self ≤ other` in the operator order.
    pub fn leq(&self, other: &HomDesc) -> Result<bool> {
        Ok(other.sub(self)?.is_positive())
    }
}

impl PartialEq for HomDesc {
    fn eq(&self, other: &Self) -> bool {
        if self.kind() != other.kind() {
            return false;
        }
        match (self.canonical(), other.canonical()) {
            (HomDesc::Matrix(a), HomDesc::Matrix(b)) => a == b,
            (HomDesc::Diagonal(a), HomDesc::Diagonal(b)) => a == b,
            (HomDesc::ZMul(a), HomDesc::ZMul(b)) => a == b,
            (HomDesc::DiagPlusFinite { diag: a, block: m }, HomDesc::DiagPlusFinite { diag: b, block: n }) => {
                a == b && m == n
            }
            _ => false,
        }
    }
}

impl Eq for HomDesc {}

impl fmt::Display for HomDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomDesc::Matrix(m) => write!(f, "{m}"),
            HomDesc::Diagonal(a) => write!(f, "D({a})"),
            HomDesc::DiagPlusFinite { diag, block } => write!(f, "D({diag}) + {block}"),
            HomDesc::Identity(k) => write!(f, "I on {k}"),
            HomDesc::ZMul(c) => write!(f, "x -> {c}x"),
        }
    }
}
