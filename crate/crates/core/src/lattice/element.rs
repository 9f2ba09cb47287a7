use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// A vector in ℚⁿ, ordered coordinatewise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FinVec {
    entries: Vec<Rat>,
}

impl FinVec {
    pub fn new(entries: Vec<Rat>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidElement("vector of dimension 0".into()));
        }
        Ok(FinVec { entries })
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        FinVec::new(xs.iter().map(|&x| Rat::from_int(x)).collect()).expect("nonempty")
    }

    pub fn zero(dim: usize) -> Self {
        FinVec { entries: vec![Rat::zero(); dim.max(1)] }
    }

    /// `e_i` in ℚ^dim.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = FinVec::zero(dim);
        v.entries[i] = Rat::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.entries
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.entries[i]
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> FinVec {
        FinVec { entries: self.entries.iter().map(f).collect() }
    }

    pub fn zip_with(&self, other: &FinVec, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<FinVec> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidElement(format!("dimension mismatch: {} vs {}", self.dim(), other.dim())));
        }
        Ok(FinVec { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn is_nonneg(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
    }
}

/// An eventually constant rational sequence: `prefix[i]` for `i < prefix.len()`,
/// `tail` afterwards.
///
/// Always canonical: trailing prefix entries equal to the tail are trimmed, so
/// two sequences are equal iff they agree at every index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EvSeq {
    prefix: Vec<Rat>,
    tail: Rat,
}

impl EvSeq {
    pub fn new(prefix: Vec<Rat>, tail: Rat) -> Self {
        let mut s = EvSeq { prefix, tail };
        s.canonicalize_in_place();
        s
    }

    pub fn from_ints(prefix: &[i64], tail: i64) -> Self {
        EvSeq::new(prefix.iter().map(|&x| Rat::from_int(x)).collect(), Rat::from_int(tail))
    }

    pub fn constant(tail: Rat) -> Self {
        EvSeq { prefix: Vec::new(), tail }
    }

    pub fn zero() -> Self {
        EvSeq::constant(Rat::zero())
    }

    /// Indicator of index `i`.
    pub fn unit(i: usize) -> Self {
        let mut prefix = vec![Rat::zero(); i + 1];
        prefix[i] = Rat::one();
        EvSeq::new(prefix, Rat::zero())
    }

    /// Indicator of `{i : i >= from}`.
    pub fn tail_indicator(from: usize) -> Self {
        EvSeq::new(vec![Rat::zero(); from], Rat::one())
    }

    fn canonicalize_in_place(&mut self) {
        while self.prefix.last() == Some(&self.tail) {
            self.prefix.pop();
        }
    }

    /// Trim trailing prefix entries equal to the tail. Values built through
    /// [`EvSeq::new`] are already canonical.
    pub fn canonicalize(&self) -> EvSeq {
        let mut s = self.clone();
        s.canonicalize_in_place();
        s
    }

    /// Builds a sequence without trimming; only useful to exercise
    /// [`EvSeq::canonicalize`].
    pub fn raw(prefix: Vec<Rat>, tail: Rat) -> Self {
        EvSeq { prefix, tail }
    }

    pub fn prefix(&self) -> &[Rat] {
        &self.prefix
    }

    pub fn tail(&self) -> &Rat {
        &self.tail
    }

    pub fn at(&self, i: usize) -> &Rat {
        self.prefix.get(i).unwrap_or(&self.tail)
    }

    /// The first `len` values (`len` may exceed the prefix).
    pub fn head(&self, len: usize) -> Vec<Rat> {
        (0..len).map(|i| self.at(i).clone()).collect()
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> EvSeq {
        EvSeq::new(self.prefix.iter().map(&f).collect(), f(&self.tail))
    }

    pub fn zip_with(&self, other: &EvSeq, f: impl Fn(&Rat, &Rat) -> Rat) -> EvSeq {
        let len = self.prefix.len().max(other.prefix.len());
        let prefix = (0..len).map(|i| f(self.at(i), other.at(i))).collect();
        EvSeq::new(prefix, f(&self.tail, &other.tail))
    }

    pub fn is_nonneg(&self) -> bool {
        !self.tail.is_negative() && self.prefix.iter().all(|x| !x.is_negative())
    }

    pub fn sup_abs(&self) -> Rat {
        self.prefix.iter().chain(std::iter::once(&self.tail)).map(Rat::abs).max().expect("tail")
    }
}

/// An element of one of the shipped instances.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Element {
    Vec(FinVec),
    Seq(EvSeq),
    Int(BigInt),
}

impl Element {
    pub fn vec(xs: &[i64]) -> Element {
        Element::Vec(FinVec::from_ints(xs))
    }

    pub fn seq(prefix: &[i64], tail: i64) -> Element {
        Element::Seq(EvSeq::from_ints(prefix, tail))
    }

    pub fn int(n: i64) -> Element {
        Element::Int(BigInt::from(n))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Element::Vec(_) => "vector",
            Element::Seq(_) => "sequence",
            Element::Int(_) => "integer",
        }
    }

    pub fn as_vec(&self) -> Option<&FinVec> {
        match self {
            Element::Vec(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_seq(&self) -> Option<&EvSeq> {
        match self {
            Element::Seq(s) => Some(s),
            _ => None,
        }
    }

    /// Number of explicitly stored coordinates.
    pub fn frame_len(&self) -> usize {
        match self {
            Element::Vec(v) => v.dim(),
            Element::Seq(s) => s.prefix().len(),
            Element::Int(_) => 1,
        }
    }

    /// Coordinates `0..len` plus the tail value for sequences. For vectors and
    /// integers `len` is ignored and the tail is `None`.
    pub fn frame(&self, len: usize) -> (Vec<Rat>, Option<Rat>) {
        match self {
            Element::Vec(v) => (v.entries().to_vec(), None),
            Element::Seq(s) => (s.head(len), Some(s.tail().clone())),
            Element::Int(n) => (vec![Rat::from_bigint(n.clone())], None),
        }
    }

    /// Rebuilds an element of the same kind as `self` from frame coordinates.
    pub fn like_from_frame(&self, head: Vec<Rat>, tail: Option<Rat>) -> Result<Element> {
        match self {
            Element::Vec(_) => Ok(Element::Vec(FinVec::new(head)?)),
            Element::Seq(_) => {
                Ok(Element::Seq(EvSeq::new(head, tail.ok_or_else(|| Error::InvalidElement("missing tail".into()))?)))
            }
            Element::Int(_) => {
                let v = head.into_iter().next().ok_or_else(|| Error::InvalidElement("empty".into()))?;
                if !v.is_integer() {
                    return Err(Error::InvalidElement(format!("{v} is not an integer")));
                }
                Ok(Element::Int(v.numer()))
            }
        }
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> Result<Element> {
        match self {
            Element::Vec(v) => Ok(Element::Vec(v.map(f))),
            Element::Seq(s) => Ok(Element::Seq(s.map(f))),
            Element::Int(n) => {
                let r = f(&Rat::from_bigint(n.clone()));
                self.like_from_frame(vec![r], None)
            }
        }
    }

    pub fn zip_with(&self, other: &Element, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<Element> {
        match (self, other) {
            (Element::Vec(a), Element::Vec(b)) => Ok(Element::Vec(a.zip_with(b, f)?)),
            (Element::Seq(a), Element::Seq(b)) => Ok(Element::Seq(a.zip_with(b, f))),
            (Element::Int(a), Element::Int(b)) => {
                let r = f(&Rat::from_bigint(a.clone()), &Rat::from_bigint(b.clone()));
                self.like_from_frame(vec![r], None)
            }
            _ => Err(Error::InvalidElement(format!(
                "cannot combine a {} with a {}",
                self.kind_name(),
                other.kind_name()
            ))),
        }
    }

    /// Coordinatewise comparison `self <= other`.
    pub fn leq(&self, other: &Element) -> Result<bool> {
        let d = other.zip_with(self, |a, b| a - b)?;
        Ok(d.is_nonneg())
    }

    pub fn is_nonneg(&self) -> bool {
        match self {
            Element::Vec(v) => v.is_nonneg(),
            Element::Seq(s) => s.is_nonneg(),
            Element::Int(n) => n >= &BigInt::from(0),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Vec(v) => v.entries().iter().all(Rat::is_zero),
            Element::Seq(s) => s.prefix().is_empty() && s.tail().is_zero(),
            Element::Int(n) => n == &BigInt::from(0),
        }
    }

    pub fn zero_like(&self) -> Element {
        match self {
            Element::Vec(v) => Element::Vec(FinVec::zero(v.dim())),
            Element::Seq(_) => Element::Seq(EvSeq::zero()),
            Element::Int(_) => Element::Int(BigInt::from(0)),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Element {
        self.map(|a| -a).expect("negation keeps integers integral")
    }

    pub fn join(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| Rat::max_of(a, b).clone())
    }

    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.zip_with(other, |a, b| Rat::min_of(a, b).clone())
    }

    pub fn pos(&self) -> Element {
        self.map(Rat::pos).expect("integral")
    }

    pub fn neg_part(&self) -> Element {
        self.map(Rat::neg_part).expect("integral")
    }

    pub fn abs(&self) -> Element {
        self.map(Rat::abs).expect("integral")
    }

    /// Multiplication by a rational scalar; fails on integers unless the
    /// result stays integral.
    pub fn scale(&self, c: &Rat) -> Result<Element> {
        self.map(|a| a * c)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[Rat]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for FinVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_list(f, &self.entries)?;
        write!(f, ")")
    }
}

impl fmt::Display for EvSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "prefix(")?;
        write_list(f, &self.prefix)?;
        write!(f, ") tail {}", self.tail)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vec(v) => v.fmt(f),
            Element::Seq(s) => s.fmt(f),
            Element::Int(n) => write!(f, "{n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evseq_is_canonical() {
        let s = EvSeq::from_ints(&[1, 1, 1], 1);
        assert!(s.prefix().is_empty());
        assert_eq!(s, EvSeq::constant(Rat::one()));
        let t = EvSeq::from_ints(&[1, 0, 2, 2], 2);
        assert_eq!(t.prefix().len(), 2);
        assert_eq!(t.at(7), &Rat::from_int(2));
    }

    #[test]
    fn evseq_join_example() {
        // prefix(1,-1) tail 0 ∨ prefix(0) tail 1 = prefix(1) tail 1
        let a = EvSeq::from_ints(&[1, -1], 0);
        let b = EvSeq::from_ints(&[0], 1);
        let j = a.zip_with(&b, |x, y| Rat::max_of(x, y).clone());
        assert_eq!(j, EvSeq::from_ints(&[1], 1));
        for i in 0..=3 {
            assert_eq!(j.at(i), Rat::max_of(a.at(i), b.at(i)));
        }
    }

    #[test]
    fn mismatched_kinds_are_rejected() {
        let a = Element::vec(&[1, 2]);
        assert!(a.join(&Element::vec(&[1])).is_err());
        assert!(a.join(&Element::seq(&[], 1)).is_err());
        assert!(FinVec::new(vec![]).is_err());
    }

    #[test]
    fn integer_elements_stay_integral() {
        let a = Element::int(3);
        assert!(a.scale(&Rat::new(1, 2)).unwrap_err().to_string().contains("integer"));
        assert_eq!(a.join(&Element::int(-4)).unwrap(), Element::int(3));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Element::vec(&[1, -2]).to_string(), "(1, -2)");
        assert_eq!(Element::seq(&[1, -1], 5).to_string(), "prefix(1, -1) tail 5");
    }
}
