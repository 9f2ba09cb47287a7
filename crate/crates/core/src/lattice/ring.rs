//! The ℓ-ring interface used by the law checkers, plus the f-ring and
//! Archimedean checks.

use std::fmt;

use num_bigint::BigInt;
use rand::RngCore;

use crate::error::Result;
use crate::lattice::element::FinVec;
use crate::lattice::{sample, Element, Space};
use crate::scalar::Rat;

/// A lattice-ordered ring whose elements can be combined without failing.
///
/// Implementations may panic when handed elements that do not belong to the
/// ring; the checked entry points live on [`Space`].
pub trait LatticeRing {
    type Elem: Clone + PartialEq + fmt::Display + fmt::Debug;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn pos(&self, a: &Self::Elem) -> Self::Elem {
        self.join(a, &self.zero())
    }
    fn neg_part(&self, a: &Self::Elem) -> Self::Elem {
        self.join(&self.neg(a), &self.zero())
    }
    fn abs(&self, a: &Self::Elem) -> Self::Elem {
        self.join(a, &self.neg(a))
    }
}

impl LatticeRing for Space {
    type Elem = Element;

    fn name(&self) -> String {
        self.to_string()
    }
    fn zero(&self) -> Element {
        Space::zero(self)
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        Space::add(self, a, b).expect("ring element")
    }
    fn neg(&self, a: &Element) -> Element {
        a.neg()
    }
    fn join(&self, a: &Element, b: &Element) -> Element {
        Space::join(self, a, b).expect("ring element")
    }
    fn meet(&self, a: &Element, b: &Element) -> Element {
        Space::meet(self, a, b).expect("ring element")
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        self.ring_mul(a, b).expect("ring element")
    }
    fn leq(&self, a: &Element, b: &Element) -> bool {
        Space::leq(self, a, b).expect("ring element")
    }
    fn sample(&self, rng: &mut dyn RngCore) -> Element {
        sample::element(rng, self.kind())
    }
}

/// 2×2 rational matrices, entrywise order, matrix multiplication. An ℓ-ring
/// that is not an f-ring. Elements are row-major vectors in ℚ⁴.
#[derive(Clone, Copy, Debug, Default)]
pub struct MatrixRing2;

impl MatrixRing2 {
    /// The matrix unit `E_ij` (1-based, as usually written).
    pub fn unit(i: usize, j: usize) -> FinVec {
        FinVec::unit(4, (i - 1) * 2 + (j - 1))
    }
}

impl LatticeRing for MatrixRing2 {
    type Elem = FinVec;

    fn name(&self) -> String {
        "2x2 rational matrices (entrywise order)".into()
    }
    fn zero(&self) -> FinVec {
        FinVec::zero(4)
    }
    fn add(&self, a: &FinVec, b: &FinVec) -> FinVec {
        a.zip_with(b, |x, y| x + y).expect("4 entries")
    }
    fn neg(&self, a: &FinVec) -> FinVec {
        a.map(|x| -x)
    }
    fn join(&self, a: &FinVec, b: &FinVec) -> FinVec {
        a.zip_with(b, |x, y| Rat::max_of(x, y).clone()).expect("4 entries")
    }
    fn meet(&self, a: &FinVec, b: &FinVec) -> FinVec {
        a.zip_with(b, |x, y| Rat::min_of(x, y).clone()).expect("4 entries")
    }
    fn mul(&self, a: &FinVec, b: &FinVec) -> FinVec {
        let (a, b) = (a.entries(), b.entries());
        let at = |m: &[Rat], i: usize, j: usize| m[i * 2 + j].clone();
        let entries = (0..4)
            .map(|k| {
                let (i, j) = (k / 2, k % 2);
                at(a, i, 0) * at(b, 0, j) + at(a, i, 1) * at(b, 1, j)
            })
            .collect();
        FinVec::new(entries).expect("4 entries")
    }
    fn leq(&self, a: &FinVec, b: &FinVec) -> bool {
        a.entries().iter().zip(b.entries()).all(|(x, y)| x <= y)
    }
    fn sample(&self, rng: &mut dyn RngCore) -> FinVec {
        sample::fin_vec(rng, 4)
    }
}

/// Which product broke the f-ring axiom.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FRingSide {
    /// `ca ∧ b ≠ 0`
    Left,
    /// `ac ∧ b ≠ 0`
    Right,
}

#[derive(Clone, PartialEq, Debug)]
pub enum FRingVerdict<E> {
    Holds { checked: usize, skipped: usize },
    Witness { a: E, b: E, c: E, side: FRingSide, meet: E, skipped: usize },
}

impl<E> FRingVerdict<E> {
    pub fn holds(&self) -> bool {
        matches!(self, FRingVerdict::Holds { .. })
    }
}

/// Checks `a ∧ b = 0, c ≥ 0 ⇒ ca ∧ b = ac ∧ b = 0` on the given triples.
/// Triples violating the hypothesis are skipped and counted.
pub fn check_f_ring<R: LatticeRing>(ring: &R, samples: &[(R::Elem, R::Elem, R::Elem)]) -> FRingVerdict<R::Elem> {
    let zero = ring.zero();
    let mut checked = 0;
    let mut skipped = 0;
    for (a, b, c) in samples {
        if ring.meet(a, b) != zero || !ring.leq(&zero, c) {
            skipped += 1;
            continue;
        }
        checked += 1;
        for (side, prod) in [(FRingSide::Left, ring.mul(c, a)), (FRingSide::Right, ring.mul(a, c))] {
            let m = ring.meet(&prod, b);
            if m != zero {
                return FRingVerdict::Witness { a: a.clone(), b: b.clone(), c: c.clone(), side, meet: m, skipped };
            }
        }
    }
    FRingVerdict::Holds { checked, skipped }
}

/// Random triples satisfying the f-ring hypothesis: `a = u⁺`, `b = u⁻`, `c = |v|`.
pub fn f_ring_samples<R: LatticeRing>(ring: &R, rng: &mut dyn RngCore, n: usize) -> Vec<(R::Elem, R::Elem, R::Elem)> {
    (0..n)
        .map(|_| {
            let u = ring.sample(rng);
            let v = ring.sample(rng);
            (ring.pos(&u), ring.neg_part(&u), ring.abs(&v))
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Archimedean {
    /// The least `n ≥ 1` with `n·x ≰ y`.
    Witness(BigInt),
    /// `x ≤ 0`: `n·x ≤ y` may hold for every `n` and nothing needs refuting.
    XNonPositive,
}

/// For `x ≰ 0`, the least positive `n` with `n·x ≰ y`.
pub fn archimedean_witness(space: &Space, x: &Element, y: &Element) -> Result<Archimedean> {
    space.check(x)?;
    space.check(y)?;
    if x.leq(&space.zero())? {
        return Ok(Archimedean::XNonPositive);
    }
    if !x.leq(y)? {
        return Ok(Archimedean::Witness(BigInt::from(1)));
    }
    // Now x ≤ y, so only coordinates with x_i > 0 can eventually fail:
    // n·x_i > y_i first happens at floor(y_i / x_i) + 1.
    let len = x.frame_len().max(y.frame_len());
    let (xh, xt) = x.frame(len);
    let (yh, yt) = y.frame(len);
    let coords = xh.into_iter().zip(yh).chain(xt.into_iter().zip(yt));
    let n = coords
        .filter(|(xi, _)| xi.is_positive())
        .map(|(xi, yi)| (yi / xi).floor() + BigInt::from(1))
        .min()
        .expect("x has a positive coordinate");
    Ok(Archimedean::Witness(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Multiplication;
    use crate::topology::TopologyId;

    #[test]
    fn f_ring_pointwise_example() {
        let q2 = Space::qn(2);
        let s = vec![(Element::vec(&[1, 0]), Element::vec(&[0, 1]), Element::vec(&[5, 5]))];
        assert_eq!(check_f_ring(&q2, &s), FRingVerdict::Holds { checked: 1, skipped: 0 });
    }

    #[test]
    fn f_ring_matrix_witness() {
        let m = MatrixRing2;
        let (a, b, c) = (MatrixRing2::unit(1, 1), MatrixRing2::unit(2, 1), MatrixRing2::unit(2, 1));
        // E21·E11 = E21 by hand
        assert_eq!(m.mul(&c, &a), MatrixRing2::unit(2, 1));
        match check_f_ring(&m, &[(a, b, c)]) {
            FRingVerdict::Witness { side, meet, .. } => {
                assert_eq!(side, FRingSide::Left);
                assert_eq!(meet, MatrixRing2::unit(2, 1));
            }
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn f_ring_zero_multiplication_holds() {
        let z = Space::evseq(Multiplication::Zero, TopologyId::EvSeqProduct).unwrap();
        let mut r = sample::rng(3);
        let s = f_ring_samples(&z, &mut r, 50);
        assert!(check_f_ring(&z, &s).holds());
    }

    #[test]
    fn f_ring_skips_bad_hypotheses() {
        let q1 = Space::qn(1);
        let s = vec![(Element::vec(&[1]), Element::vec(&[1]), Element::vec(&[1]))];
        assert_eq!(check_f_ring(&q1, &s), FRingVerdict::Holds { checked: 0, skipped: 1 });
    }

    fn scan(x: &Element, y: &Element) -> u64 {
        (1..10_000u64).find(|&n| !x.scale(&Rat::from_int(n as i64)).unwrap().leq(y).unwrap()).unwrap()
    }

    #[test]
    fn archimedean_examples() {
        let (x, y) = (Element::vec(&[1]), Element::vec(&[100]));
        assert_eq!(archimedean_witness(&Space::qn(1), &x, &y).unwrap(), Archimedean::Witness(101.into()));
        assert_eq!(scan(&x, &y), 101);
        assert_eq!(
            archimedean_witness(&Space::qn(2), &Element::vec(&[-1, 0]), &Element::vec(&[0, 0])).unwrap(),
            Archimedean::XNonPositive
        );
        let s = Space::product();
        let x = Element::Seq(crate::lattice::EvSeq::constant(Rat::new(1, 2)));
        let y = Element::seq(&[], 10);
        assert_eq!(archimedean_witness(&s, &x, &y).unwrap(), Archimedean::Witness(21.into()));
        assert_eq!(scan(&x, &y), 21);
    }

    #[test]
    fn archimedean_matches_scan_on_samples() {
        let mut r = sample::rng(11);
        let q3 = Space::qn(3);
        for _ in 0..300 {
            let x = sample::element(&mut r, q3.kind());
            let y = sample::element(&mut r, q3.kind());
            match archimedean_witness(&q3, &x, &y).unwrap() {
                Archimedean::Witness(n) => assert_eq!(n, BigInt::from(scan(&x, &y))),
                Archimedean::XNonPositive => assert!(x.leq(&q3.zero()).unwrap()),
            }
        }
    }
}
