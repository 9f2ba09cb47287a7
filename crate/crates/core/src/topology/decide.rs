use num_bigint::BigInt;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::lattice::{sample, Element, Multiplication, Space, SpaceKind};
use crate::scalar::Rat;
use crate::topology::set::{signed_fraction, Resolved};
use crate::topology::{solid_hull, Bound, BoundFn, NbhdDesc, SetDesc, Shape, TopologyId};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solidity {
    pub solid: bool,
    /// `(x, y)` with `y ∈ S`, `|x| ≤ |y|` and `x ∉ S`.
    pub witness: Option<(Element, Element)>,
}

pub fn is_solid(s: &SetDesc) -> Result<Solidity> {
    let frame = Frame::for_kind(s.space().kind(), s.frame_len());
    let zero = s.space().zero();
    let build = |v: Vec<Rat>| frame.rebuild(&zero, v);
    let solid = Solidity { solid: true, witness: None };
    match s.resolve(frame)? {
        Resolved::Hull(_) => Ok(solid),
        Resolved::Box { lo, hi } => {
            let contains_zero = lo.iter().zip(&hi).all(|(l, h)| {
                l.as_ref().is_none_or(|l| !l.is_positive()) && h.as_ref().is_none_or(|h| !h.is_negative())
            });
            if !contains_zero {
                let y = lo
                    .iter()
                    .zip(&hi)
                    .map(|(l, h)| match (l, h) {
                        (Some(l), _) if l.is_positive() => l.clone(),
                        (_, Some(h)) if h.is_negative() => h.clone(),
                        _ => Rat::zero(),
                    })
                    .collect();
                return Ok(Solidity { solid: false, witness: Some((zero.clone(), build(y)?)) });
            }
            for (i, (l, h)) in lo.iter().zip(&hi).enumerate() {
                // with 0 inside, coordinate i is symmetric iff lo_i = -hi_i
                let t = match (l, h) {
                    (None, None) => continue,
                    (Some(l), Some(h)) if l == &-h => continue,
                    (Some(l), Some(h)) if h > &-l => h.clone(),
                    (Some(l), None) => -l + Rat::one(),
                    (Some(l), Some(_)) => l.clone(),
                    (None, Some(h)) => -(h + Rat::one()),
                };
                let mut y = vec![Rat::zero(); frame.size()];
                y[i] = t.clone();
                let mut x = vec![Rat::zero(); frame.size()];
                x[i] = -t;
                return Ok(Solidity { solid: false, witness: Some((build(x)?, build(y)?)) });
            }
            Ok(solid)
        }
        Resolved::Points(ps) => {
            let contains = |v: &Vec<Rat>| ps.contains(v);
            for y in &ps {
                for x in solid_candidates(y, ps.len(), s.space().kind()) {
                    if !contains(&x) {
                        return Ok(Solidity { solid: false, witness: Some((build(x)?, build(y.clone())?)) });
                    }
                }
            }
            Ok(solid)
        }
    }
}

/// Points `x` with `|x| ≤ |y|`; more than `n` distinct ones unless every
/// point of that kind below `|y|` is listed.
fn solid_candidates(y: &[Rat], n: usize, kind: SpaceKind) -> Vec<Vec<Rat>> {
    let zero = vec![Rat::zero(); y.len()];
    if kind == SpaceKind::ZDiscrete {
        let m = y[0].abs();
        let mut out = vec![zero];
        let mut k = 1i64;
        while out.len() <= n && Rat::from_int(k) <= m {
            out.push(vec![Rat::from_int(k)]);
            out.push(vec![Rat::from_int(-k)]);
            k += 1;
        }
        return out;
    }
    if y.iter().all(Rat::is_zero) {
        return vec![zero];
    }
    let mut out: Vec<Vec<Rat>> = (0..y.len())
        .filter(|&i| !y[i].is_zero())
        .map(|i| {
            let mut x = zero.clone();
            x[i] = y[i].clone();
            x
        })
        .collect();
    out.push(zero);
    let mut h = y.to_vec();
    for _ in 0..=n {
        h = h.iter().map(|c| c * &Rat::new(1, 2)).collect();
        out.push(h.clone());
    }
    out
}

/// Every resolvable set shape is a closed box, a finite union of closed
/// boxes, or finite, hence order closed.
pub fn is_order_closed(s: &SetDesc) -> Result<bool> {
    let frame = Frame::for_kind(s.space().kind(), s.frame_len());
    s.resolve(frame).map(|_| true)
}

fn dominated(rng: &mut dyn RngCore, y: &Element) -> Result<Element> {
    let integral = matches!(y, Element::Int(_));
    let frame = Frame { len: y.frame_len(), tail: matches!(y, Element::Seq(_)) };
    let v = frame.element(y).iter().map(|c| signed_fraction(rng, c, integral)).collect();
    frame.rebuild(y, v)
}

/// Re-checks a solidity verdict on `n` sampled pairs (or on its witness).
pub fn spot_check_solid(s: &SetDesc, rng: &mut dyn RngCore, n: usize) -> Result<usize> {
    let verdict = is_solid(s)?;
    if let Some((x, y)) = &verdict.witness {
        if !(s.contains(y)? && !s.contains(x)? && x.abs().leq(&y.abs())?) {
            return Err(Error::SoundnessBug(format!("solidity witness ({x}, {y}) does not refute {s}")));
        }
        return Ok(1);
    }
    for _ in 0..n {
        let y = s.sample_member(rng)?;
        let x = dominated(rng, &y)?;
        if !s.contains(&x)? {
            return Err(Error::SoundnessBug(format!("{s} judged solid but {x} ∉ S with |x| ≤ |{y}|")));
        }
    }
    Ok(n)
}

/// Samples sequences inside `S` that order converge, and checks that their
/// limits stay in `S`.
pub fn spot_check_order_closed(s: &SetDesc, rng: &mut dyn RngCore, n: usize) -> Result<usize> {
    if !is_order_closed(s)? {
        return Ok(0);
    }
    let frame = Frame::for_kind(s.space().kind(), s.frame_len());
    let resolved = s.resolve(frame)?;
    for _ in 0..n {
        let e = s.sample_member(rng)?;
        let m = match resolved {
            Resolved::Box { .. } => s.sample_member(rng)?,
            Resolved::Hull(_) => e.map(|c| c * &Rat::new(1, 2)).unwrap_or(e.clone()),
            Resolved::Points(_) => e.clone(),
        };
        // x_k = e + (m - e)/k decreases to e in absolute distance
        for k in 1..=8 {
            let x = e.add(&m.sub(&e)?.map(|c| c / &Rat::from_int(k))?)?;
            if matches!(x, Element::Int(_)) || s.contains(&x)? {
                continue;
            }
            return Err(Error::SoundnessBug(format!("{x} left {s}")));
        }
        if !s.contains(&e)? {
            return Err(Error::SoundnessBug(format!("limit {e} left {s}")));
        }
    }
    Ok(n)
}

/// Proof that a set is ring-bounded: a rule choosing `V` for each `W`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingCert {
    pub beta: BoundFn,
    pub space: Space,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RingVerdict {
    Bounded(RingCert),
    /// No base `V` satisfies `V·S ⊆ W` for this `W`.
    NotBounded {
        witness: NbhdDesc,
    },
}

impl RingVerdict {
    pub fn is_bounded(&self) -> bool {
        matches!(self, RingVerdict::Bounded(_))
    }
}

fn ratio(eps: &Rat, beta: &Bound) -> Rat {
    match beta {
        Bound::Finite(b) if b.is_positive() => eps / b,
        _ => eps.clone(),
    }
}

fn check_w(space: Space, w: &NbhdDesc) -> Result<()> {
    w.validate()?;
    if !w.fits(space.kind()) || w.topology() != space.topology() {
        return Err(Error::InvalidNeighborhood(format!("{w} is not a base neighborhood of {space}")));
    }
    Ok(())
}

impl RingCert {
    /// A base `V` with `V·S ⊆ W` and `S·V ⊆ W`.
    pub fn v_for(&self, w: &NbhdDesc) -> Result<NbhdDesc> {
        check_w(self.space, w)?;
        if self.space.mul() == Multiplication::Zero {
            return Ok(NbhdDesc::unit(self.space.topology(), self.space.kind()));
        }
        Ok(match w {
            NbhdDesc::QnBox { radii } => {
                NbhdDesc::QnBox { radii: radii.iter().enumerate().map(|(i, e)| ratio(e, &self.beta.at(i))).collect() }
            }
            NbhdDesc::Product { coords, radius } => NbhdDesc::Product {
                coords: coords.clone(),
                radius: ratio(radius, &self.beta.max_over(coords.iter().copied())),
            },
            NbhdDesc::SupNorm { radius } => NbhdDesc::SupNorm { radius: ratio(radius, &self.beta.sup()) },
            NbhdDesc::ZeroSingleton => NbhdDesc::ZeroSingleton,
        })
    }

    /// Decides `V·S ⊆ W` from the bounds alone.
    pub fn verify(&self, w: &NbhdDesc, v: &NbhdDesc) -> bool {
        if self.space.mul() == Multiplication::Zero {
            return true;
        }
        product_within(&self.beta, v, w)
    }
}

/// `sup |v_i s_i| ≤ ε_i` at every coordinate `W` constrains.
fn product_within(beta: &BoundFn, v: &NbhdDesc, w: &NbhdDesc) -> bool {
    let (vb, wb) = (v.bounds(), w.bounds());
    let len = beta.frame_len().max(vb.frame_len()).max(wb.frame_len()) + 1;
    (0..len).all(|i| {
        let (a, b) = (vb.at(i), beta.at(i));
        let prod = if a.is_zero() || b.is_zero() {
            Bound::zero()
        } else {
            match (a, b) {
                (Bound::Finite(x), Bound::Finite(y)) => Bound::Finite(x * y),
                _ => Bound::Infinite,
            }
        };
        match (wb.at(i), prod) {
            (Bound::Infinite, _) => true,
            (Bound::Finite(_), Bound::Infinite) => false,
            (Bound::Finite(e), Bound::Finite(p)) => p <= e,
        }
    })
}

fn unbounded_witness(space: Space, beta: &BoundFn) -> Option<NbhdDesc> {
    match space.topology() {
        TopologyId::EvSeqProduct => {
            beta.first_infinite().map(|k| NbhdDesc::Product { coords: [k].into(), radius: Rat::one() })
        }
        TopologyId::EvSeqSupNorm => (!beta.all_finite()).then(|| NbhdDesc::SupNorm { radius: Rat::one() }),
        TopologyId::QnBox | TopologyId::ZDiscrete => None,
    }
}

/// `S` is ring-bounded in its own space.
pub fn set_ring_bounded(s: &SetDesc) -> Result<RingVerdict> {
    let beta = s.coordinate_bounds()?;
    let space = s.space();
    if space.mul() == Multiplication::Pointwise {
        if let Some(witness) = unbounded_witness(space, &beta) {
            return Ok(RingVerdict::NotBounded { witness });
        }
    }
    Ok(RingVerdict::Bounded(RingCert { beta, space }))
}

/// Proof that a set is group-bounded: the least `n` with `S ⊆ nU` per `U`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupCert {
    pub beta: BoundFn,
    pub space: Space,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupVerdict {
    Bounded(GroupCert),
    /// `S ⊄ nU` for every `n`.
    NotBounded {
        witness: NbhdDesc,
    },
}

impl GroupVerdict {
    pub fn is_bounded(&self) -> bool {
        matches!(self, GroupVerdict::Bounded(_))
    }
}

impl GroupCert {
    pub fn n_for(&self, u: &NbhdDesc) -> Result<BigInt> {
        check_w(self.space, u)?;
        let ub = u.bounds();
        let len = self.beta.frame_len().max(ub.frame_len()) + 1;
        let mut n = BigInt::from(1);
        for i in 0..len {
            if let (Bound::Finite(e), Bound::Finite(b)) = (ub.at(i), self.beta.at(i)) {
                if e.is_positive() {
                    n = n.max((b / e).ceil());
                }
            }
        }
        Ok(n)
    }

    /// `S ⊆ nU`
    pub fn verify(&self, u: &NbhdDesc, n: &BigInt) -> bool {
        let scaled = u.scaled(&Rat::from_bigint(n.clone()));
        let ub = scaled.bounds();
        let len = self.beta.frame_len().max(ub.frame_len()) + 1;
        (0..len).all(|i| match (ub.at(i), self.beta.at(i)) {
            (Bound::Infinite, _) => true,
            (Bound::Finite(_), Bound::Infinite) => false,
            (Bound::Finite(e), Bound::Finite(b)) => b <= e,
        })
    }
}

/// `S` is group-bounded in its own space; multiplication plays no role.
pub fn set_group_bounded(s: &SetDesc) -> Result<GroupVerdict> {
    let beta = s.coordinate_bounds()?;
    let space = s.space();
    let witness = match space.topology() {
        TopologyId::ZDiscrete => (!beta.is_zero()).then_some(NbhdDesc::ZeroSingleton),
        _ => unbounded_witness(space, &beta),
    };
    Ok(match witness {
        Some(witness) => GroupVerdict::NotBounded { witness },
        None => GroupVerdict::Bounded(GroupCert { beta, space }),
    })
}

/// Representative members of each parametric base family.
fn sample_base(top: TopologyId) -> Vec<(Space, NbhdDesc)> {
    let radii = [Rat::one(), Rat::new(1, 3), Rat::from_int(7)];
    match top {
        TopologyId::QnBox => radii
            .iter()
            .flat_map(|r| {
                (1..=3).map(move |n| {
                    (
                        Space::qn(n),
                        NbhdDesc::QnBox { radii: (0..n).map(|i| r * &Rat::from_int(i as i64 + 1)).collect() },
                    )
                })
            })
            .collect(),
        TopologyId::EvSeqProduct => radii
            .iter()
            .flat_map(|r| {
                [vec![], vec![0], vec![0, 2, 5]].into_iter().map(move |f| {
                    (Space::product(), NbhdDesc::Product { coords: f.into_iter().collect(), radius: r.clone() })
                })
            })
            .collect(),
        TopologyId::EvSeqSupNorm => {
            radii.iter().map(|r| (Space::supnorm(), NbhdDesc::SupNorm { radius: r.clone() })).collect()
        }
        TopologyId::ZDiscrete => vec![(Space::z_discrete(), NbhdDesc::ZeroSingleton)],
    }
}

/// Every base neighborhood of `top` is solid and order closed.
pub fn fatou_check(top: TopologyId) -> Result<bool> {
    let mut rng = sample::rng(sample::DEFAULT_SEED);
    for (space, u) in sample_base(top) {
        let s = SetDesc::nbhd(space, u)?;
        if !is_solid(&s)?.solid || !is_order_closed(&s)? {
            return Ok(false);
        }
        spot_check_solid(&s, &mut rng, 20)?;
        spot_check_order_closed(&s, &mut rng, 5)?;
    }
    Ok(true)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HullPreservation {
    pub set: RingCert,
    pub hull: RingCert,
}

impl HullPreservation {
    pub fn beta_equal(&self) -> bool {
        self.set.beta == self.hull.beta
    }
}

/// For a ring-bounded finite set, its solid hull is ring-bounded too.
pub fn hull_bounded_preservation(s: &SetDesc) -> Result<HullPreservation> {
    let Shape::Finite(points) = s.shape() else {
        return Err(Error::InvalidArgument(format!("{s} is not a finite set")));
    };
    let set = match set_ring_bounded(s)? {
        RingVerdict::Bounded(c) => c,
        RingVerdict::NotBounded { witness } => {
            return Err(Error::NotBounded(format!("{s} fails against {witness}")));
        }
    };
    let hull = match set_ring_bounded(&solid_hull(s.space(), points.clone())?)? {
        RingVerdict::Bounded(c) => c,
        RingVerdict::NotBounded { witness } => {
            return Err(Error::SoundnessBug(format!("solid hull of {s} fails against {witness}")));
        }
    };
    Ok(HullPreservation { set, hull })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::HomDesc;
    use crate::lattice::EvSeq;

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn solidity_examples() {
        let prod = SetDesc::nbhd(Space::product(), NbhdDesc::product([0, 3], q(1)).unwrap()).unwrap();
        assert!(is_solid(&prod).unwrap().solid);
        assert!(is_order_closed(&prod).unwrap());

        let q2 = Space::qn(2);
        let f = SetDesc::finite(q2, vec![Element::vec(&[1, 1])]).unwrap();
        let v = is_solid(&f).unwrap();
        assert!(!v.solid);
        assert_eq!(v.witness.unwrap().0, Element::vec(&[1, 0]));

        let iv = SetDesc::interval(q2, Element::vec(&[0, 0]), Element::vec(&[1, 1])).unwrap();
        let (x, y) = is_solid(&iv).unwrap().witness.unwrap();
        assert_eq!((x, y), (Element::vec(&[-1, 0]), Element::vec(&[1, 0])));

        let sym = SetDesc::interval(q2, Element::vec(&[-1, -2]), Element::vec(&[1, 2])).unwrap();
        assert!(is_solid(&sym).unwrap().solid);
        assert!(is_solid(&SetDesc::finite(q2, vec![Element::vec(&[0, 0])]).unwrap()).unwrap().solid);
    }

    #[test]
    fn integer_finite_sets() {
        let z = Space::z_discrete();
        let s = SetDesc::finite(z, vec![Element::int(1), Element::int(0), Element::int(-1)]).unwrap();
        assert!(is_solid(&s).unwrap().solid);
        let t = SetDesc::finite(z, vec![Element::int(5)]).unwrap();
        assert_eq!(is_solid(&t).unwrap().witness.unwrap().0, Element::int(0));
    }

    #[test]
    fn spot_checks_agree() {
        let mut r = sample::rng(5);
        let sets = [
            SetDesc::nbhd(Space::supnorm(), NbhdDesc::supnorm(Rat::new(1, 2)).unwrap()).unwrap(),
            solid_hull(Space::qn(3), vec![Element::vec(&[1, -2, 0]), Element::vec(&[0, 3, 1])]).unwrap(),
            SetDesc::interval(Space::qn(2), Element::vec(&[0, -1]), Element::vec(&[2, 1])).unwrap(),
            SetDesc::finite(Space::product(), vec![Element::seq(&[1], 2)]).unwrap(),
        ];
        for s in &sets {
            spot_check_solid(s, &mut r, 50).unwrap();
            spot_check_order_closed(s, &mut r, 10).unwrap();
        }
    }

    #[test]
    fn ring_bounded_examples() {
        let zero = Space::evseq(Multiplication::Zero, TopologyId::EvSeqProduct).unwrap();
        let u = SetDesc::nbhd(zero, NbhdDesc::product([0], q(1)).unwrap()).unwrap();
        assert!(set_ring_bounded(&u).unwrap().is_bounded());

        let u = SetDesc::nbhd(Space::product(), NbhdDesc::product([0], q(1)).unwrap()).unwrap();
        match set_ring_bounded(&u).unwrap() {
            RingVerdict::NotBounded { witness } => assert_eq!(witness, NbhdDesc::product([1], q(1)).unwrap()),
            other => panic!("{other:?}"),
        }
        // explicit scaling: x = n·e_1 ∈ U for all n, and δ·n > 1 once n > 1/δ
        let delta = Rat::new(1, 1000);
        let x = Element::Seq(EvSeq::unit(1)).scale(&q(1001)).unwrap();
        assert!(u.contains(&x).unwrap());
        assert!(&delta * x.as_seq().unwrap().at(1) > q(1));

        let xbar = Element::seq(&[3, 1], 2);
        let iv = SetDesc::interval(Space::product(), xbar.neg(), xbar).unwrap();
        let RingVerdict::Bounded(cert) = set_ring_bounded(&iv).unwrap() else { panic!() };
        let w = NbhdDesc::product([0, 4], q(1)).unwrap();
        let v = cert.v_for(&w).unwrap();
        assert_eq!(v, NbhdDesc::product([0, 4], Rat::new(1, 3)).unwrap());
        assert!(cert.verify(&w, &v));
        assert!(!cert.verify(&w, &NbhdDesc::product([0, 4], q(1)).unwrap()));
    }

    #[test]
    fn group_bounded_examples() {
        let f = SetDesc::finite(Space::qn(2), vec![Element::vec(&[10, 0])]).unwrap();
        let GroupVerdict::Bounded(c) = set_group_bounded(&f).unwrap() else { panic!() };
        let u = NbhdDesc::qn_box(vec![q(1), q(1)]).unwrap();
        let n = c.n_for(&u).unwrap();
        assert_eq!(n, BigInt::from(10));
        assert!(c.verify(&u, &n));
        assert!(!c.verify(&u, &BigInt::from(9)));

        let u = SetDesc::nbhd(Space::product(), NbhdDesc::product([0], q(1)).unwrap()).unwrap();
        assert_eq!(
            set_group_bounded(&u).unwrap(),
            GroupVerdict::NotBounded { witness: NbhdDesc::product([1], q(1)).unwrap() }
        );

        let z = SetDesc::finite(Space::z_discrete(), vec![Element::int(5)]).unwrap();
        assert_eq!(set_group_bounded(&z).unwrap(), GroupVerdict::NotBounded { witness: NbhdDesc::ZeroSingleton });
        assert!(set_ring_bounded(&z).unwrap().is_bounded());
        let z0 = SetDesc::finite(Space::z_discrete(), vec![Element::int(0)]).unwrap();
        assert!(set_group_bounded(&z0).unwrap().is_bounded());
    }

    #[test]
    fn fatou_for_all_topologies() {
        for t in TopologyId::ALL {
            assert!(fatou_check(t).unwrap(), "{t}");
        }
    }

    #[test]
    fn hull_preservation_examples() {
        let s = SetDesc::finite(Space::qn(2), vec![Element::vec(&[1, -2])]).unwrap();
        assert!(hull_bounded_preservation(&s).unwrap().beta_equal());
        let s = SetDesc::finite(Space::supnorm(), vec![Element::seq(&[3], 1)]).unwrap();
        assert!(hull_bounded_preservation(&s).unwrap().beta_equal());
        let u = SetDesc::nbhd(Space::product(), NbhdDesc::product([0], q(1)).unwrap()).unwrap();
        assert!(matches!(hull_bounded_preservation(&u), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn image_of_neighborhood_under_diagonal_is_solid() {
        let s = Space::supnorm();
        let ball = SetDesc::nbhd(s, NbhdDesc::supnorm(q(1)).unwrap()).unwrap();
        let img = SetDesc::image(s, HomDesc::Diagonal(EvSeq::from_ints(&[-3], 1)), ball).unwrap();
        assert!(is_solid(&img).unwrap().solid);
        let mut r = sample::rng(2);
        spot_check_solid(&img, &mut r, 30).unwrap();
    }
}
