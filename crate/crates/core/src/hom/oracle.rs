use crate::error::{Error, Result};
use crate::hom::calculus::frame_of;
use crate::hom::HomDesc;
use crate::lattice::Element;
use crate::scalar::Rat;

pub const ORACLE_CAP: usize = 16;

/// `sup{Ty : 0 ≤ y ≤ x}` by enumerating the `2ⁿ` vertices of `[0, x]`.
///
/// Each coordinate of `Ty` is linear in every `y_j` separately, so the
/// coordinatewise maximum over vertices is the supremum. For sequences the
/// tail slot counts as one coordinate.
pub fn sup_over_interval_oracle(t: &HomDesc, x: &Element) -> Result<Element> {
    if !x.is_nonneg() {
        return Err(Error::InvalidArgument(format!("{x} is not positive")));
    }
    let frame = frame_of(t, x);
    let n = frame.size();
    if n > ORACLE_CAP {
        return Err(Error::OracleTooLarge { dim: n, cap: ORACLE_CAP });
    }
    let m = t.materialize(frame);
    let xv = frame.element(x);
    // column j scaled by x_j: the change in Ty when y_j flips
    let cols: Vec<Vec<Rat>> = (0..n).map(|j| (0..n).map(|i| m.get(i, j) * &xv[j]).collect()).collect();
    let mut cur = vec![Rat::zero(); n];
    let mut best = cur.clone();
    let mut on = vec![false; n];
    // Gray code walk: step k flips the lowest set bit of k
    for k in 1u32..(1u32 << n) {
        let j = k.trailing_zeros() as usize;
        on[j] = !on[j];
        for (c, d) in cur.iter_mut().zip(&cols[j]) {
            if on[j] {
                *c += d;
            } else {
                *c -= d;
            }
        }
        for (b, c) in best.iter_mut().zip(&cur) {
            if c > b {
                *b = c.clone();
            }
        }
    }
    frame.rebuild(x, best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{positive_part, RatMatrix};
    use crate::lattice::{sample, EvSeq};

    #[test]
    fn examples() {
        let t = HomDesc::matrix_ints(&[&[1, -2], &[-3, 4]]);
        assert_eq!(sup_over_interval_oracle(&t, &Element::vec(&[1, 1])).unwrap(), Element::vec(&[1, 4]));
        let x = Element::vec(&[3, 0, 2]);
        assert_eq!(sup_over_interval_oracle(&HomDesc::Matrix(RatMatrix::identity(3)), &x).unwrap(), x);
        let neg = HomDesc::matrix_ints(&[&[-1, 0], &[-2, -5]]);
        assert_eq!(sup_over_interval_oracle(&neg, &Element::vec(&[4, 4])).unwrap(), Element::vec(&[0, 0]));
        assert!(sup_over_interval_oracle(&t, &Element::vec(&[-1, 1])).is_err());
    }

    #[test]
    fn cap() {
        let big = HomDesc::Matrix(RatMatrix::identity(17));
        let x = Element::Vec(crate::lattice::FinVec::zero(17));
        assert_eq!(sup_over_interval_oracle(&big, &x), Err(Error::OracleTooLarge { dim: 17, cap: 16 }));
    }

    #[test]
    fn sequence_forms_agree_with_positive_part() {
        let mut r = sample::rng(9);
        let h = HomDesc::diag_plus_finite(
            EvSeq::from_ints(&[-1, 2], -3),
            RatMatrix::from_ints(&[&[0, 5, -1], &[-2, 0, 1], &[1, 1, 0]]),
        )
        .unwrap();
        for _ in 0..100 {
            let x = sample::nonneg_element(&mut r, crate::lattice::SpaceKind::EvSeq);
            assert_eq!(positive_part(&h).apply(&x).unwrap(), sup_over_interval_oracle(&h, &x).unwrap());
        }
    }
}
