use std::fmt;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::hom::{HomDesc, RatMatrix};
use crate::lattice::{sample, Element, Space, SpaceKind};
use crate::scalar::Rat;
use crate::topology::{Bound, BoundFn, NbhdDesc};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Shape {
    /// The order interval `[lo, hi]`.
    Interval {
        lo: Element,
        hi: Element,
    },
    Finite(Vec<Element>),
    /// `∪_y [−|y|, |y|]`
    SolidHull(Vec<Element>),
    Nbhd(NbhdDesc),
    /// `T(S)`; the inner set lives in the domain space of `T`.
    Image {
        hom: HomDesc,
        set: Box<SetDesc>,
    },
}

/// A symbolic subset of a space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetDesc {
    space: Space,
    shape: Shape,
}

pub fn solid_hull(space: Space, points: Vec<Element>) -> Result<SetDesc> {
    SetDesc::new(space, Shape::SolidHull(points))
}

impl SetDesc {
    pub fn new(space: Space, shape: Shape) -> Result<SetDesc> {
        match &shape {
            Shape::Interval { lo, hi } => {
                space.check(lo)?;
                space.check(hi)?;
                if !lo.leq(hi)? {
                    return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
                }
            }
            Shape::Finite(xs) | Shape::SolidHull(xs) => {
                if xs.is_empty() {
                    return Err(Error::EmptyInput("set needs at least one point"));
                }
                xs.iter().try_for_each(|x| space.check(x))?;
            }
            Shape::Nbhd(u) => {
                u.validate()?;
                if !u.fits(space.kind()) || u.topology() != space.topology() {
                    return Err(Error::InvalidNeighborhood(format!("{u} is not a base neighborhood of {space}")));
                }
            }
            Shape::Image { hom, set } => {
                if hom.kind() != space.kind() || set.space.kind() != space.kind() {
                    return Err(Error::InvalidElement(format!("{hom} does not map {} into {space}", set.space)));
                }
            }
        }
        Ok(SetDesc { space, shape })
    }

    pub fn interval(space: Space, lo: Element, hi: Element) -> Result<SetDesc> {
        SetDesc::new(space, Shape::Interval { lo, hi })
    }

    pub fn finite(space: Space, xs: Vec<Element>) -> Result<SetDesc> {
        SetDesc::new(space, Shape::Finite(xs))
    }

    pub fn nbhd(space: Space, u: NbhdDesc) -> Result<SetDesc> {
        SetDesc::new(space, Shape::Nbhd(u))
    }

    /// `T(S)` viewed in `codomain`.
    pub fn image(codomain: Space, hom: HomDesc, set: SetDesc) -> Result<SetDesc> {
        SetDesc::new(codomain, Shape::Image { hom, set: Box::new(set) })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// The composite map and the innermost non-image set.
    pub fn flatten(&self) -> Result<(Option<HomDesc>, &SetDesc)> {
        match &self.shape {
            Shape::Image { hom, set } => {
                let (inner, base) = set.flatten()?;
                let c = match inner {
                    Some(s) => hom.compose(&s)?,
                    None => hom.clone(),
                };
                Ok((Some(c), base))
            }
            _ => Ok((None, self)),
        }
    }

    pub fn frame_len(&self) -> usize {
        match &self.shape {
            Shape::Interval { lo, hi } => lo.frame_len().max(hi.frame_len()),
            Shape::Finite(xs) | Shape::SolidHull(xs) => xs.iter().map(Element::frame_len).max().unwrap_or(0),
            Shape::Nbhd(u) => u.frame_len(),
            Shape::Image { hom, set } => hom.frame_len().max(set.frame_len()),
        }
    }

    fn frame(&self, extra: usize) -> Frame {
        Frame::for_kind(self.space.kind(), self.frame_len().max(extra))
    }

    /// Exact `β(i) = sup{|x_i| : x ∈ S}`.
    pub fn coordinate_bounds(&self) -> Result<BoundFn> {
        let frame = self.frame(0);
        let (hom, base) = self.flatten()?;
        let m = match &hom {
            Some(h) => h.materialize(frame),
            None => RatMatrix::identity(frame.size()),
        };
        let rows = 0..frame.size();
        let beta: Vec<Bound> = match &base.shape {
            Shape::Interval { lo, hi } => {
                let (lo, hi) = (frame.element(lo), frame.element(hi));
                rows.map(|i| {
                    let (mut top, mut bot) = (Rat::zero(), Rat::zero());
                    for (j, c) in m.row(i).iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let (p, q) = (c * &lo[j], c * &hi[j]);
                        top += Rat::max_of(&p, &q);
                        bot += Rat::min_of(&p, &q);
                    }
                    Bound::Finite(Rat::max_of(&top.abs(), &bot.abs()).clone())
                })
                .collect()
            }
            Shape::Finite(xs) => {
                let images: Vec<Vec<Rat>> = xs.iter().map(|x| m.mul_vec(&frame.element(x))).collect();
                rows.map(|i| Bound::Finite(images.iter().map(|y| y[i].abs()).max().expect("nonempty"))).collect()
            }
            Shape::SolidHull(gs) => {
                let abs = m.map(Rat::abs);
                let images: Vec<Vec<Rat>> = gs.iter().map(|g| abs.mul_vec(&frame.element(&g.abs()))).collect();
                rows.map(|i| Bound::Finite(images.iter().map(|y| y[i].clone()).max().expect("nonempty"))).collect()
            }
            Shape::Nbhd(u) => {
                let r = slot_bounds(&u.bounds(), frame);
                rows.map(|i| m.row(i).iter().zip(&r).fold(Bound::zero(), |acc, (c, b)| acc.add(&b.times_coef(c))))
                    .collect()
            }
            Shape::Image { .. } => unreachable!("flattened"),
        };
        Ok(frame_bound_fn(frame, beta))
    }

    /// Exact membership, when the set resolves to a box, finite set or hull.
    pub fn contains(&self, x: &Element) -> Result<bool> {
        self.space.check(x)?;
        let frame = self.frame(x.frame_len());
        let xv = frame.element(x);
        Ok(match self.resolve(frame)? {
            Resolved::Box { lo, hi } => xv
                .iter()
                .enumerate()
                .all(|(i, xi)| lo[i].as_ref().is_none_or(|l| l <= xi) && hi[i].as_ref().is_none_or(|h| xi <= h)),
            Resolved::Points(ps) => ps.iter().any(|p| p == &xv),
            Resolved::Hull(gs) => gs.iter().any(|g| xv.iter().zip(g).all(|(a, b)| a.abs() <= *b)),
        })
    }

    /// The set as explicit frame data. Images resolve when the composite map
    /// sends boxes to boxes (at most one nonzero per row and column) or the
    /// inner set is finite.
    pub(crate) fn resolve(&self, frame: Frame) -> Result<Resolved> {
        let (hom, base) = self.flatten()?;
        let base = match &base.shape {
            Shape::Interval { lo, hi } => Resolved::Box {
                lo: frame.element(lo).into_iter().map(Some).collect(),
                hi: frame.element(hi).into_iter().map(Some).collect(),
            },
            Shape::Finite(xs) => Resolved::Points(xs.iter().map(|x| frame.element(x)).collect()),
            Shape::SolidHull(gs) => Resolved::Hull(gs.iter().map(|g| frame.element(&g.abs())).collect()),
            Shape::Nbhd(u) => {
                let r = slot_bounds(&u.bounds(), frame);
                Resolved::Box {
                    lo: r.iter().map(|b| b.finite().map(|x| -x)).collect(),
                    hi: r.iter().map(|b| b.finite().cloned()).collect(),
                }
            }
            Shape::Image { .. } => unreachable!("flattened"),
        };
        let Some(hom) = hom else {
            return Ok(base);
        };
        let m = hom.materialize(frame);
        if let Resolved::Points(ps) = base {
            return Ok(Resolved::Points(ps.iter().map(|p| m.mul_vec(p)).collect()));
        }
        if m.is_zero() {
            return Ok(Resolved::Points(vec![vec![Rat::zero(); frame.size()]]));
        }
        let Some(pivots) = monomial_pivots(&m) else {
            return Err(Error::Undecided(format!("image of {} under {hom} is not a box", base_name(&base))));
        };
        Ok(match base {
            Resolved::Box { lo, hi } => {
                let (mut nlo, mut nhi) = (Vec::new(), Vec::new());
                for (i, p) in pivots.iter().enumerate() {
                    let Some(j) = *p else {
                        nlo.push(Some(Rat::zero()));
                        nhi.push(Some(Rat::zero()));
                        continue;
                    };
                    let c = m.get(i, j);
                    let (a, b) = (lo[j].as_ref().map(|x| c * x), hi[j].as_ref().map(|x| c * x));
                    if c.is_positive() {
                        nlo.push(a);
                        nhi.push(b);
                    } else {
                        nlo.push(b);
                        nhi.push(a);
                    }
                }
                Resolved::Box { lo: nlo, hi: nhi }
            }
            Resolved::Hull(gs) => {
                let abs = m.map(Rat::abs);
                Resolved::Hull(gs.iter().map(|g| abs.mul_vec(g)).collect())
            }
            Resolved::Points(_) => unreachable!("handled above"),
        })
    }

    /// A random member of the set.
    pub fn sample_member(&self, rng: &mut dyn RngCore) -> Result<Element> {
        if let Shape::Image { hom, set } = &self.shape {
            return hom.apply(&set.sample_member(rng)?);
        }
        let extra = if self.space.kind() == SpaceKind::EvSeq { rng.gen_range(0..3) } else { 0 };
        let frame = self.frame(self.frame_len() + extra);
        let integral = self.space.kind() == SpaceKind::ZDiscrete;
        let round = |x: Rat| if integral { Rat::from_bigint(x.floor()) } else { x };
        let v: Vec<Rat> = match &self.shape {
            Shape::Interval { lo, hi } => {
                let (lo, hi) = (frame.element(lo), frame.element(hi));
                lo.iter().zip(&hi).map(|(a, b)| round(a + &(sample::unit_rat(rng) * (b - a)))).collect()
            }
            Shape::Finite(xs) => frame.element(&xs[rng.gen_range(0..xs.len())]),
            Shape::SolidHull(gs) => {
                let g = frame.element(&gs[rng.gen_range(0..gs.len())].abs());
                g.iter().map(|r| signed_fraction(rng, r, integral)).collect()
            }
            Shape::Nbhd(u) => slot_bounds(&u.bounds(), frame)
                .iter()
                .map(|b| match b {
                    Bound::Finite(r) => signed_fraction(rng, r, integral),
                    Bound::Infinite => sample::rat(rng) * Rat::from_int(rng.gen_range(1..=1000)),
                })
                .collect(),
            Shape::Image { .. } => unreachable!("handled above"),
        };
        frame.rebuild(&self.space.zero(), v)
    }
}

/// A random `x` with `|x| ≤ |r|`, integral when asked.
pub(crate) fn signed_fraction(rng: &mut dyn RngCore, r: &Rat, integral: bool) -> Rat {
    let mut x = sample::unit_rat(rng) * r.abs();
    if integral {
        x = Rat::from_bigint(x.floor());
    }
    if rng.gen_bool(0.5) {
        -x
    } else {
        x
    }
}

/// Explicit set data over a frame; `None` box ends are unbounded.
#[derive(Clone, Debug)]
pub(crate) enum Resolved {
    Box {
        lo: Vec<Option<Rat>>,
        hi: Vec<Option<Rat>>,
    },
    Points(Vec<Vec<Rat>>),
    /// Absolute values of the generators.
    Hull(Vec<Vec<Rat>>),
}

fn base_name(r: &Resolved) -> &'static str {
    match r {
        Resolved::Box { .. } => "a box",
        Resolved::Points(_) => "a finite set",
        Resolved::Hull(_) => "a solid hull",
    }
}

/// For a matrix with at most one nonzero entry in each row and column, the
/// column of each row's nonzero entry.
fn monomial_pivots(m: &RatMatrix) -> Option<Vec<Option<usize>>> {
    let mut used = vec![false; m.cols()];
    let mut pivots = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut nz = m.row(i).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, _)| j);
        let p = nz.next();
        if nz.next().is_some() {
            return None;
        }
        if let Some(j) = p {
            if std::mem::replace(&mut used[j], true) {
                return None;
            }
        }
        pivots.push(p);
    }
    Some(pivots)
}

pub(crate) fn slot_bounds(b: &BoundFn, frame: Frame) -> Vec<Bound> {
    (0..frame.size()).map(|s| b.at(s)).collect()
}

pub(crate) fn frame_bound_fn(frame: Frame, mut beta: Vec<Bound>) -> BoundFn {
    let tail = if frame.tail { beta.pop() } else { None };
    BoundFn::new(beta, tail)
}

impl fmt::Display for SetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, xs: &[Element]| -> fmt::Result {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, "; ")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        match &self.shape {
            Shape::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
            Shape::Finite(xs) => {
                write!(f, "{{")?;
                list(f, xs)?;
                write!(f, "}}")
            }
            Shape::SolidHull(xs) => {
                write!(f, "Sol{{")?;
                list(f, xs)?;
                write!(f, "}}")
            }
            Shape::Nbhd(u) => write!(f, "{u}"),
            Shape::Image { hom, set } => write!(f, "{hom}({set})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::EvSeq;
    use crate::topology::TopologyId;

    fn fin(x: i64) -> Bound {
        Bound::Finite(Rat::from_int(x))
    }

    #[test]
    fn hull_membership() {
        let q2 = Space::qn(2);
        let h = solid_hull(q2, vec![Element::vec(&[1, 0]), Element::vec(&[0, 1])]).unwrap();
        assert!(!h.contains(&Element::vec(&[1, 1])).unwrap());
        assert!(h.contains(&Element::vec(&[-1, 0])).unwrap());
        let single = solid_hull(q2, vec![Element::vec(&[1, -2])]).unwrap();
        assert_eq!(single.coordinate_bounds().unwrap(), BoundFn::new(vec![fin(1), fin(2)], None));
        assert!(single.contains(&Element::vec(&[-1, 2])).unwrap());
        assert!(solid_hull(q2, vec![]).is_err());
    }

    #[test]
    fn bounds_examples() {
        let s = Space::product();
        let u = SetDesc::nbhd(s, NbhdDesc::product([0], Rat::from_int(2)).unwrap()).unwrap();
        let b = u.coordinate_bounds().unwrap();
        assert_eq!((b.at(0), b.at(1), b.tail().cloned()), (fin(2), Bound::Infinite, Some(Bound::Infinite)));

        let sup = Space::supnorm();
        let ball = SetDesc::nbhd(sup, NbhdDesc::supnorm(Rat::one()).unwrap()).unwrap();
        let d = HomDesc::Diagonal(EvSeq::from_ints(&[3], 1));
        let img = SetDesc::image(sup, d, ball).unwrap();
        let b = img.coordinate_bounds().unwrap();
        assert_eq!((b.at(0), b.tail().cloned()), (fin(3), Some(fin(1))));
        let mut r = sample::rng(1);
        for _ in 0..200 {
            let x = img.sample_member(&mut r).unwrap();
            let xs = x.as_seq().unwrap();
            for i in 0..=xs.prefix().len() {
                assert!(b.at(i).contains(xs.at(i)));
            }
        }
    }

    #[test]
    fn interval_image_bounds_are_exact() {
        let q2 = Space::qn(2);
        let t = HomDesc::matrix_ints(&[&[1, -2], &[-3, 4]]);
        let iv = SetDesc::interval(q2, Element::vec(&[0, 0]), Element::vec(&[1, 1])).unwrap();
        let img = SetDesc::image(q2, t, iv).unwrap();
        // row 0 ranges over [-2, 1], row 1 over [-3, 4]
        assert_eq!(img.coordinate_bounds().unwrap(), BoundFn::new(vec![fin(2), fin(4)], None));
        assert!(matches!(img.contains(&Element::vec(&[0, 0])), Err(Error::Undecided(_))));
    }

    #[test]
    fn zero_coefficient_kills_unbounded_coordinate() {
        let s = Space::product();
        let u = SetDesc::nbhd(s, NbhdDesc::product([0], Rat::one()).unwrap()).unwrap();
        let d = HomDesc::Diagonal(EvSeq::from_ints(&[5], 0));
        let b = SetDesc::image(s, d, u).unwrap().coordinate_bounds().unwrap();
        assert_eq!(b, BoundFn::new(vec![fin(5)], Some(Bound::zero())));
    }

    #[test]
    fn nested_images_compose() {
        let s = Space::supnorm();
        let ball = SetDesc::nbhd(s, NbhdDesc::supnorm(Rat::one()).unwrap()).unwrap();
        let d = HomDesc::Diagonal(EvSeq::from_ints(&[2], -1));
        let once = SetDesc::image(s, d.clone(), ball).unwrap();
        let twice = SetDesc::image(s, d, once).unwrap();
        assert_eq!(twice.coordinate_bounds().unwrap(), BoundFn::new(vec![fin(4)], Some(fin(1))));
        assert!(twice.contains(&Element::seq(&[-4], 1)).unwrap());
        assert!(!twice.contains(&Element::seq(&[-4], 2)).unwrap());
    }

    #[test]
    fn nbhd_must_match_topology() {
        let u = NbhdDesc::supnorm(Rat::one()).unwrap();
        assert!(SetDesc::nbhd(Space::product(), u.clone()).is_err());
        assert!(SetDesc::nbhd(
            Space::evseq(crate::lattice::Multiplication::Zero, TopologyId::EvSeqSupNorm).unwrap(),
            u
        )
        .is_ok());
    }
}
