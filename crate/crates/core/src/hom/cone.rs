use rand::RngCore;

use crate::error::{Error, Result};
use crate::hom::{HomDesc, RatMatrix};
use crate::lattice::{sample, Element, EvSeq, FinVec, SpaceKind};

pub const RANDOM_AUDIT_PAIRS: usize = 200;

/// A map on the positive cone: table entries override `base`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeMapDesc {
    pub base: HomDesc,
    pub table: Vec<(Element, Element)>,
}

impl ConeMapDesc {
    pub fn new(base: HomDesc, table: Vec<(Element, Element)>) -> Result<ConeMapDesc> {
        for (x, y) in &table {
            if !x.is_nonneg() {
                return Err(Error::InvalidArgument(format!("table key {x} is not positive")));
            }
            base.check_kind(x)?;
            base.check_kind(y)?;
        }
        Ok(ConeMapDesc { base, table })
    }

    pub fn kind(&self) -> SpaceKind {
        self.base.kind()
    }

    pub fn eval(&self, x: &Element) -> Result<Element> {
        if !x.is_nonneg() {
            return Err(Error::InvalidArgument(format!("{x} is outside the positive cone")));
        }
        match self.table.iter().find(|(k, _)| k == x) {
            Some((_, v)) => Ok(v.clone()),
            None => self.base.apply(x),
        }
    }

    fn additive_at(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.eval(&x.add(y)?)? == self.eval(x)?.add(&self.eval(y)?)?)
    }

    /// Checks `f(x + y) = f(x) + f(y)` on all table pairs and on random
    /// positive pairs. Returns the number of pairs checked.
    pub fn audit(&self, rng: &mut dyn RngCore) -> Result<usize> {
        let mut checked = 0;
        let keys: Vec<&Element> = self.table.iter().map(|(k, _)| k).collect();
        for (i, x) in keys.iter().enumerate() {
            for y in &keys[i..] {
                checked += 1;
                if !self.additive_at(x, y)? {
                    return Err(Error::NotAdditiveOnCone { left: (*x).clone(), right: (*y).clone() });
                }
            }
        }
        for _ in 0..RANDOM_AUDIT_PAIRS {
            let x = sample::nonneg_element(rng, self.kind());
            let y = sample::nonneg_element(rng, self.kind());
            checked += 1;
            if !self.additive_at(&x, &y)? {
                return Err(Error::NotAdditiveOnCone { left: x, right: y });
            }
        }
        Ok(checked)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Extension {
    pub hom: HomDesc,
    pub audited_pairs: usize,
}

/// The unique additive extension `E(x) = f(x⁺) − f(x⁻)`, rebuilt from the
/// values of `f` on unit vectors (and on the tail indicator for sequences).
pub fn extend_from_cone(f: &ConeMapDesc, rng: &mut dyn RngCore) -> Result<Extension> {
    let audited_pairs = f.audit(rng)?;
    let kind = f.kind();
    let frame = f.base.frame_for(f.table.iter().map(|(k, _)| k.frame_len()).max().unwrap_or(0));
    let probes: Vec<Element> = match kind {
        SpaceKind::Qn(n) => (0..n).map(|j| Element::Vec(FinVec::unit(n, j))).collect(),
        SpaceKind::EvSeq => (0..frame.len)
            .map(|j| Element::Seq(EvSeq::unit(j)))
            .chain([Element::Seq(EvSeq::tail_indicator(frame.len))])
            .collect(),
        SpaceKind::ZDiscrete => vec![Element::int(1)],
    };
    let cols = probes.iter().map(|p| Ok(frame.element(&f.eval(p)?))).collect::<Result<Vec<_>>>()?;
    let m = RatMatrix::from_fn(frame.size(), frame.size(), |i, j| cols[j][i].clone());
    let hom = HomDesc::from_frame_matrix(kind, frame, m)?;
    check_agrees(f, &hom)?;
    Ok(Extension { hom, audited_pairs })
}

fn check_agrees(f: &ConeMapDesc, e: &HomDesc) -> Result<()> {
    for (k, v) in &f.table {
        if &e.apply(k)? != v {
            return Err(Error::SoundnessBug(format!("extension disagrees with the table at {k}")));
        }
    }
    Ok(())
}

/// `f(x⁺) − f(x⁻)` evaluated through the cone map itself.
pub fn extension_value(f: &ConeMapDesc, x: &Element) -> Result<Element> {
    f.eval(&x.pos())?.sub(&f.eval(&x.neg_part())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubling() {
        let f = ConeMapDesc::new(HomDesc::matrix_ints(&[&[2]]), vec![]).unwrap();
        let mut r = sample::rng(0);
        let e = extend_from_cone(&f, &mut r).unwrap();
        assert_eq!(e.hom.apply(&Element::vec(&[-3])).unwrap(), Element::vec(&[-6]));
    }

    #[test]
    fn matrix_restriction() {
        let t = HomDesc::matrix_ints(&[&[1, 1], &[0, 1]]);
        let f = ConeMapDesc::new(t.clone(), vec![]).unwrap();
        let mut r = sample::rng(0);
        let e = extend_from_cone(&f, &mut r).unwrap();
        assert_eq!(e.hom, t);
        let x = Element::vec(&[-1, 2]);
        assert_eq!(extension_value(&f, &x).unwrap(), Element::vec(&[1, 2]));
        assert_eq!(e.hom.apply(&x).unwrap(), Element::vec(&[1, 2]));
    }

    #[test]
    fn planted_table_is_rejected() {
        let table = vec![
            (Element::vec(&[1, 0]), Element::vec(&[1, 0])),
            (Element::vec(&[0, 1]), Element::vec(&[0, 0])),
            (Element::vec(&[1, 1]), Element::vec(&[5, 5])),
        ];
        let f = ConeMapDesc::new(HomDesc::matrix_ints(&[&[1, 0], &[0, 0]]), table).unwrap();
        let mut r = sample::rng(0);
        assert_eq!(
            extend_from_cone(&f, &mut r),
            Err(Error::NotAdditiveOnCone { left: Element::vec(&[1, 0]), right: Element::vec(&[0, 1]) })
        );
    }

    #[test]
    fn sequence_cone_map() {
        let h =
            HomDesc::diag_plus_finite(EvSeq::from_ints(&[1], -2), RatMatrix::from_ints(&[&[0, 3], &[1, 0]])).unwrap();
        let f = ConeMapDesc::new(h.clone(), vec![(Element::seq(&[1, 1], 0), Element::seq(&[4, -1], 0))]).unwrap();
        let mut r = sample::rng(0);
        assert_eq!(extend_from_cone(&f, &mut r).unwrap().hom, h);
    }
}
