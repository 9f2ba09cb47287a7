//! Randomized audits of the algebraic laws and of every module's
//! invariants. Each audit is seeded, exact, and reports one [`CheckResult`].

use std::fmt::Display;

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::{
    directed_sup, extend_from_cone, extension_value, hom_join, hom_meet, modulus, negative_part, positive_part,
    riesz_decompose, sup_over_interval_oracle, ConeMapDesc, HomDesc, RatMatrix,
};
use crate::homspace::{
    br_converges, classify, cr_converges, lattice_continuity_audit, limit_uniqueness_audit, nr_bounded_on,
    nr_converges, BoundedVerdict, CrConvergence, HomNet, ModeParams, Reading,
};
use crate::lattice::{
    archimedean_witness, check_f_ring, f_ring_samples, sample, Archimedean, Element, EvSeq, FRingVerdict, FinVec,
    LatticeRing, MatrixRing2, Multiplication, Space, SpaceKind,
};
use crate::scalar::Rat;
use crate::topology::{
    fatou_check, hull_bounded_preservation, set_group_bounded, set_ring_bounded, NbhdDesc, SetDesc, TopologyId,
};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub detail: String,
}

/// A failed law or audit, with its witness.
struct Failed(String);

impl From<Error> for Failed {
    fn from(e: Error) -> Failed {
        Failed(format!("error: {e}"))
    }
}

type Outcome = std::result::Result<usize, Failed>;

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, Failed> {
    Err(Failed(msg.into()))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> CheckResult {
    match f() {
        Ok(checked) => CheckResult { name: name.into(), passed: true, checked, detail: String::new() },
        Err(Failed(detail)) => CheckResult { name: name.into(), passed: false, checked: 0, detail },
    }
}

pub const INSTANCES: [&str; 8] = [
    "q1_pointwise",
    "q2_pointwise",
    "q3_pointwise",
    "evseq_product",
    "evseq_supnorm",
    "evseq_zero",
    "z_discrete",
    "matrix2_entrywise",
];

/// The shipped space behind an instance name (every name but the matrix ring).
pub fn instance_space(name: &str) -> Result<Space> {
    match name {
        "q1_pointwise" => Ok(Space::qn(1)),
        "q2_pointwise" => Ok(Space::qn(2)),
        "q3_pointwise" => Ok(Space::qn(3)),
        "evseq_product" => Ok(Space::product()),
        "evseq_supnorm" => Ok(Space::supnorm()),
        "evseq_zero" => Space::evseq(Multiplication::Zero, TopologyId::EvSeqProduct),
        "z_discrete" => Ok(Space::z_discrete()),
        _ => Err(Error::UnknownInstance(name.into())),
    }
}

fn spaces() -> Vec<Space> {
    INSTANCES.iter().filter_map(|n| instance_space(n).ok()).collect()
}

type Law<'a, E> = &'a dyn Fn(&E, &E, &E) -> bool;

fn ring_laws<R: LatticeRing>(ring: &R, rng: &mut dyn RngCore, cases: usize) -> Vec<CheckResult>
where
    R::Elem: Display,
{
    let mut pairs = Vec::with_capacity(cases);
    for _ in 0..cases {
        let x = ring.sample(rng);
        let y = ring.sample(rng);
        let z = ring.sample(rng);
        pairs.push((x, y, z));
    }
    let law = |name: &str, ok: Law<R::Elem>| {
        run(name, || {
            for (x, y, z) in &pairs {
                if !ok(x, y, z) {
                    return fail(format!("x = {x}, y = {y}, z = {z}"));
                }
            }
            Ok(pairs.len())
        })
    };
    let mut out = vec![
        law("modularity", &|x, y, _| ring.add(&ring.join(x, y), &ring.meet(x, y)) == ring.add(x, y)),
        law("positive_parts", &|x, _, _| {
            let (p, n) = (ring.pos(x), ring.neg_part(x));
            ring.sub(&p, &n) == *x && ring.add(&p, &n) == ring.abs(x) && ring.meet(&p, &n) == ring.zero()
        }),
        law("translation_invariance", &|x, y, z| {
            let hi = ring.add(x, &ring.abs(y));
            ring.leq(&ring.add(x, z), &ring.add(&hi, z))
        }),
        law("triangle", &|x, y, _| ring.leq(&ring.abs(&ring.add(x, y)), &ring.add(&ring.abs(x), &ring.abs(y)))),
        law("compatibility", &|x, y, _| ring.leq(&ring.abs(&ring.mul(x, y)), &ring.mul(&ring.abs(x), &ring.abs(y)))),
    ];
    let samples = f_ring_samples(ring, rng, cases);
    out.push(run("f_ring", || match check_f_ring(ring, &samples) {
        FRingVerdict::Holds { checked, .. } => Ok(checked),
        FRingVerdict::Witness { a, b, c, side, meet, .. } => {
            fail(format!("a = {a}, b = {b}, c = {c}: {side:?} product meets b in {meet}"))
        }
    }));
    out
}

fn space_laws(space: Space, rng: &mut dyn RngCore, cases: usize) -> Vec<CheckResult> {
    let kind = space.kind();
    let mut out = vec![run("archimedean", || {
        let mut checked = 0;
        for _ in 0..cases {
            let x = sample::element(rng, kind);
            let y = sample::element(rng, kind);
            let positive = !x.leq(&space.zero())?;
            match archimedean_witness(&space, &x, &y)? {
                Archimedean::XNonPositive if positive => return fail(format!("x = {x} has a positive coordinate")),
                Archimedean::XNonPositive => {}
                Archimedean::Witness(n) => {
                    let at = |k: &num_bigint::BigInt| x.scale(&Rat::from_bigint(k.clone()));
                    let prev = &n - 1;
                    if at(&n)?.leq(&y)? || (prev > 0.into() && !at(&prev)?.leq(&y)?) {
                        return fail(format!("n = {n} is not the least multiple of {x} escaping {y}"));
                    }
                }
            }
            checked += 1;
        }
        Ok(checked)
    })];
    if kind == SpaceKind::EvSeq {
        out.push(run("canonical_idempotence", || {
            for _ in 0..cases {
                let s = sample::ev_seq(rng);
                let padded: Vec<Rat> = s
                    .prefix()
                    .iter()
                    .cloned()
                    .chain(std::iter::repeat_n(s.tail().clone(), rng.gen_range(0..3)))
                    .collect();
                let raw = EvSeq::raw(padded, s.tail().clone());
                let c = raw.canonicalize();
                if c.canonicalize() != c || c != s.canonicalize() {
                    return fail(format!("{raw} canonicalizes to {c}"));
                }
            }
            Ok(cases)
        }));
    }
    out
}

/// Lattice, ℓ-ring, f-ring and Archimedean laws on one shipped instance.
pub fn laws(instance: &str, seed: u64, cases: usize) -> Result<Vec<CheckResult>> {
    if cases == 0 {
        return Err(Error::InvalidArgument("cases must be positive".into()));
    }
    let mut rng = sample::rng(seed);
    if instance == "matrix2_entrywise" {
        return Ok(ring_laws(&MatrixRing2, &mut rng, cases));
    }
    let space = instance_space(instance)?;
    let mut out = ring_laws(&space, &mut rng, cases);
    out.extend(space_laws(space, &mut rng, cases));
    Ok(out)
}

fn positive_rat(rng: &mut dyn RngCore) -> Rat {
    Rat::new(rng.gen_range(1..=9), rng.gen_range(1..=6))
}

pub fn random_matrix(rng: &mut dyn RngCore, n: usize) -> HomDesc {
    let rows = (0..n).map(|_| (0..n).map(|_| sample::rat(rng)).collect()).collect();
    HomDesc::Matrix(RatMatrix::from_rows(rows).expect("square"))
}

/// A random homomorphism of one of the shipped forms on `kind`.
pub fn random_hom(rng: &mut dyn RngCore, kind: SpaceKind) -> HomDesc {
    match kind {
        SpaceKind::Qn(n) => random_matrix(rng, n),
        SpaceKind::EvSeq => {
            let diag = sample::ev_seq(rng);
            let k = rng.gen_range(0..=3);
            let rows =
                (0..k).map(|i| (0..k).map(|j| if i == j { Rat::zero() } else { sample::rat(rng) }).collect()).collect();
            HomDesc::diag_plus_finite(diag, RatMatrix::from_rows(rows).expect("square")).expect("square block")
        }
        SpaceKind::ZDiscrete => HomDesc::ZMul(rng.gen_range(-4i64..=4).into()),
    }
}

fn random_nbhd(rng: &mut dyn RngCore, space: Space) -> NbhdDesc {
    match (space.topology(), space.kind()) {
        (TopologyId::QnBox, SpaceKind::Qn(n)) => NbhdDesc::QnBox { radii: (0..n).map(|_| positive_rat(rng)).collect() },
        (TopologyId::EvSeqProduct, _) => {
            NbhdDesc::Product { coords: (0..5).filter(|_| rng.gen_bool(0.4)).collect(), radius: positive_rat(rng) }
        }
        (TopologyId::EvSeqSupNorm, _) => NbhdDesc::SupNorm { radius: positive_rat(rng) },
        _ => NbhdDesc::ZeroSingleton,
    }
}

fn random_points(rng: &mut dyn RngCore, kind: SpaceKind) -> Vec<Element> {
    (0..rng.gen_range(1..=3)).map(|_| sample::element(rng, kind)).collect()
}

/// A random symbolic set; images nest at most `depth` deep.
pub fn random_set(rng: &mut dyn RngCore, space: Space, depth: usize) -> Result<SetDesc> {
    let kind = space.kind();
    match rng.gen_range(0..if depth > 0 { 5 } else { 4 }) {
        0 => {
            let lo = sample::element(rng, kind);
            let hi = lo.add(&sample::element(rng, kind).abs())?;
            SetDesc::interval(space, lo, hi)
        }
        1 => SetDesc::finite(space, random_points(rng, kind)),
        2 => crate::topology::solid_hull(space, random_points(rng, kind)),
        3 => SetDesc::nbhd(space, random_nbhd(rng, space)),
        _ => {
            let inner = random_set(rng, space, depth - 1)?;
            SetDesc::image(space, random_hom(rng, kind), inner)
        }
    }
}

/// `T⁺(x)` against the vertex-enumeration supremum.
pub fn oracle_agreement(seed: u64, matrices: usize, points: usize) -> CheckResult {
    run("oracle_agreement", || {
        let mut rng = sample::rng(seed);
        let mut checked = 0;
        for _ in 0..matrices {
            let n = rng.gen_range(1..=6);
            let t = random_matrix(&mut rng, n);
            let p = positive_part(&t);
            for _ in 0..points {
                let x = sample::nonneg_element(&mut rng, SpaceKind::Qn(n));
                let (a, b) = (p.apply(&x)?, sup_over_interval_oracle(&t, &x)?);
                if a != b {
                    return fail(format!("T = {t}, x = {x}: T+(x) = {a} but the supremum is {b}"));
                }
                checked += 1;
            }
        }
        Ok(checked)
    })
}

/// Splitting `x = x1 + x2` under `|x| ≤ |y1 + y2|` in ℚ⁵.
pub fn decomposition_audit(seed: u64, cases: usize) -> CheckResult {
    run("decomposition", || {
        let mut rng = sample::rng(seed);
        let q5 = Space::qn(5);
        for k in 0..cases {
            let y1 = sample::element(&mut rng, q5.kind());
            let y2 = sample::element(&mut rng, q5.kind());
            let bound = y1.add(&y2)?.abs();
            let signed = k % 2 == 0;
            let mut entries = Vec::with_capacity(5);
            for b in bound.as_vec().expect("q5").entries() {
                let t = sample::unit_rat(&mut rng) * b;
                entries.push(if signed && rng.gen_bool(0.5) { -t } else { t });
            }
            let x = Element::Vec(FinVec::new(entries)?);
            let (x1, x2) = riesz_decompose(&q5, &x, &y1, &y2)?;
            let ok = x1.add(&x2)? == x
                && x1.abs().leq(&y1.abs())?
                && x2.abs().leq(&y2.abs())?
                && (!x.is_nonneg() || (x1.is_nonneg() && x2.is_nonneg()));
            if !ok {
                return fail(format!("x = {x}, y1 = {y1}, y2 = {y2} split as {x1} + {x2}"));
            }
        }
        Ok(cases)
    })
}

/// Cone maps restricted from homomorphisms extend back to them; a planted
/// non-additive table is rejected.
pub fn cone_extension_audit(seed: u64, maps: usize, inputs: usize) -> CheckResult {
    run("cone_extension", || {
        let mut rng = sample::rng(seed);
        let mut checked = 0;
        for k in 0..maps {
            let kind = if k % 4 == 3 { SpaceKind::EvSeq } else { SpaceKind::Qn(rng.gen_range(1..=4)) };
            let t = random_hom(&mut rng, kind);
            let keys: Vec<Element> = (0..2).map(|_| sample::nonneg_element(&mut rng, kind)).collect();
            let table = keys.into_iter().map(|x| Ok((x.clone(), t.apply(&x)?))).collect::<Result<Vec<_>>>()?;
            let f = ConeMapDesc::new(t.clone(), table)?;
            let e = extend_from_cone(&f, &mut rng)?;
            if e.hom != t {
                return fail(format!("extension {} of {t}", e.hom));
            }
            for _ in 0..inputs {
                let x = sample::element(&mut rng, kind);
                let want = t.apply(&x)?;
                if e.hom.apply(&x)? != want || extension_value(&f, &x)? != want {
                    return fail(format!("extension of {t} disagrees at {x}"));
                }
                checked += 1;
            }
        }
        let planted = vec![
            (Element::vec(&[1, 0]), Element::vec(&[1, 0])),
            (Element::vec(&[0, 1]), Element::vec(&[0, 1])),
            (Element::vec(&[1, 1]), Element::vec(&[3, 1])),
        ];
        let f = ConeMapDesc::new(HomDesc::Identity(SpaceKind::Qn(2)), planted)?;
        match extend_from_cone(&f, &mut rng) {
            Err(Error::NotAdditiveOnCone { .. }) => Ok(checked + 1),
            other => fail(format!("planted table accepted: {other:?}")),
        }
    })
}

fn hom_pair(rng: &mut dyn RngCore, k: usize) -> (HomDesc, HomDesc) {
    let kind = if k % 5 == 4 { SpaceKind::EvSeq } else { SpaceKind::Qn(rng.gen_range(1..=4)) };
    (random_hom(rng, kind), random_hom(rng, kind))
}

/// `T = T⁺ − T⁻`, `|T| = T⁺ + T⁻`, `T⁺ ∧ T⁻ = 0`, `(T ∨ S) + (T ∧ S) = T + S`.
pub fn hom_lattice_laws(seed: u64, pairs: usize) -> CheckResult {
    run("hom_lattice_laws", || {
        let mut rng = sample::rng(seed);
        for k in 0..pairs {
            let (t, s) = hom_pair(&mut rng, k);
            let (p, n) = (positive_part(&t), negative_part(&t));
            let ok = p.sub(&n)? == t
                && p.add(&n)? == modulus(&t)
                && hom_meet(&p, &n)?.is_zero()
                && hom_join(&t, &s)?.add(&hom_meet(&t, &s)?)? == t.add(&s)?;
            if !ok {
                return fail(format!("T = {t}, S = {s}"));
            }
        }
        Ok(pairs)
    })
}

/// The supremum of a finite family lies above every member and below every
/// upper bound.
pub fn directed_sup_audit(seed: u64, families: usize) -> CheckResult {
    run("directed_sup", || {
        let mut rng = sample::rng(seed);
        let mut checked = 0;
        for k in 0..families {
            let kind = if k % 5 == 4 { SpaceKind::EvSeq } else { SpaceKind::Qn(rng.gen_range(1..=4)) };
            let family: Vec<HomDesc> = (0..rng.gen_range(1..=5)).map(|_| random_hom(&mut rng, kind)).collect();
            let top = family[1..].iter().try_fold(family[0].clone(), |acc, t| hom_join(&acc, t))?;
            let bounds: Vec<HomDesc> =
                (0..3).map(|_| top.add(&modulus(&random_hom(&mut rng, kind)))).collect::<Result<_>>()?;
            let s = directed_sup(&family, &bounds[0])?;
            for t in &family {
                if !t.leq(&s)? {
                    return fail(format!("member {t} is not below {s}"));
                }
            }
            for r in &bounds {
                if !s.leq(r)? {
                    return fail(format!("{s} is not below the upper bound {r}"));
                }
            }
            checked += family.len() + bounds.len();
        }
        Ok(checked)
    })
}

/// Finite sets are ring-bounded and their solid hulls have the same bounds.
pub fn solid_hull_audit(seed: u64, sets: usize) -> CheckResult {
    run("solid_hull", || {
        let mut rng = sample::rng(seed);
        let all = spaces();
        for k in 0..sets {
            let space = all[k % all.len()];
            let s = SetDesc::finite(space, random_points(&mut rng, space.kind()))?;
            let h = hull_bounded_preservation(&s)?;
            if !h.beta_equal() {
                return fail(format!("{s}: bounds {} but hull bounds {}", h.set.beta, h.hull.beta));
            }
        }
        Ok(sets)
    })
}

/// Sampled members respect the exact coordinate bounds.
pub fn beta_upper_bound(seed: u64, sets: usize) -> CheckResult {
    run("beta_upper_bound", || {
        let mut rng = sample::rng(seed);
        let all = spaces();
        let mut checked = 0;
        for k in 0..sets {
            let s = random_set(&mut rng, all[k % all.len()], 1)?;
            let beta = s.coordinate_bounds()?;
            for _ in 0..5 {
                let x = s.sample_member(&mut rng)?;
                let len = x.frame_len().max(beta.frame_len()) + 1;
                let (head, tail) = x.frame(len);
                let coords = head.iter().enumerate().chain(tail.iter().map(|t| (len, t)));
                for (i, xi) in coords {
                    if !beta.at(i).contains(xi) {
                        return fail(format!("{x} from {s} exceeds {beta} at {i}"));
                    }
                }
                checked += 1;
            }
        }
        Ok(checked)
    })
}

/// On pointwise sequence and ℚⁿ spaces the two readings of boundedness agree;
/// under zero multiplication every set is ring-bounded.
pub fn decider_agreement(seed: u64, sets: usize) -> CheckResult {
    run("decider_agreement", || {
        let mut rng = sample::rng(seed);
        let pointwise: Vec<Space> = spaces()
            .into_iter()
            .filter(|s| s.mul() == Multiplication::Pointwise && s.kind() != SpaceKind::ZDiscrete)
            .collect();
        let zero = [
            Space::evseq(Multiplication::Zero, TopologyId::EvSeqProduct)?,
            Space::evseq(Multiplication::Zero, TopologyId::EvSeqSupNorm)?,
        ];
        for k in 0..sets {
            let s = random_set(&mut rng, pointwise[k % pointwise.len()], 1)?;
            let (r, g) = (set_ring_bounded(&s)?.is_bounded(), set_group_bounded(&s)?.is_bounded());
            if r != g {
                return fail(format!("{s}: ring-bounded {r}, group-bounded {g}"));
            }
            let z = random_set(&mut rng, zero[k % 2], 1)?;
            if !set_ring_bounded(&z)?.is_bounded() {
                return fail(format!("{z} is not ring-bounded under zero multiplication"));
            }
        }
        Ok(2 * sets)
    })
}

pub fn fatou_all() -> CheckResult {
    run("fatou", || {
        for top in TopologyId::ALL {
            if !fatou_check(top)? {
                return fail(format!("{top} has a base member that is not solid and order closed"));
            }
        }
        Ok(TopologyId::ALL.len())
    })
}

fn all_topology_pairs() -> Result<Vec<Space>> {
    let mut out = spaces();
    out.push(Space::evseq(Multiplication::Zero, TopologyId::EvSeqSupNorm)?);
    Ok(out)
}

pub fn identity_continuous() -> CheckResult {
    run("identity_continuous", || {
        let all = all_topology_pairs()?;
        for s in &all {
            if !classify(&HomDesc::Identity(s.kind()), *s, *s)?.continuous.holds() {
                return fail(format!("identity on {s} is not continuous"));
            }
        }
        Ok(all.len())
    })
}

/// If `T(U)` is bounded then so is `T⁺(U)`, for the same `U`.
pub fn positive_part_nr(seed: u64, cases: usize) -> CheckResult {
    run("positive_part_nr", || {
        let mut rng = sample::rng(seed);
        let all: Vec<Space> = spaces().into_iter().filter(|s| s.mul() == Multiplication::Pointwise).collect();
        let mut checked = 0;
        for k in 0..cases {
            let s = all[k % all.len()];
            let t = random_hom(&mut rng, s.kind());
            let label = classify(&t, s, s)?;
            for r in [Reading::Ring, Reading::Group] {
                if let BoundedVerdict::Bounded { set, .. } = label.nr.get(r) {
                    let crate::topology::Shape::Nbhd(u) = set.shape() else {
                        return fail("nr witness is not a neighborhood");
                    };
                    if !nr_bounded_on(&positive_part(&t), s, s, u, r)? {
                        return fail(format!("{t} is nr-bounded on {u} but its positive part is not"));
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    })
}

/// A convergent closed-form pair `(T + M/α, T)` on a random space.
fn random_pair(rng: &mut dyn RngCore, k: usize) -> Result<(HomNet, HomNet, Space)> {
    let s = match k % 3 {
        0 => Space::qn(rng.gen_range(1..=3)),
        1 => Space::supnorm(),
        _ => Space::product(),
    };
    // steps in the product topology must vanish eventually to converge on a basic set
    let step = |rng: &mut dyn RngCore| match random_hom(rng, s.kind()) {
        HomDesc::DiagPlusFinite { diag, block } if s.topology() == TopologyId::EvSeqProduct => {
            HomDesc::diag_plus_finite(EvSeq::new(diag.prefix().to_vec(), Rat::zero()), block)
        }
        m => Ok(m),
    };
    let t = random_hom(rng, s.kind());
    let mut steps = vec![(step(rng)?, 1)];
    if rng.gen_bool(0.3) {
        steps.push((step(rng)?, 2));
    }
    Ok((HomNet::closed(s, s, t.clone(), steps)?, HomNet::constant(s, s, t)?, s))
}

/// Parameters for one mode; the nr neighborhood constrains every explicit
/// coordinate of the net so the difference can vanish on it.
fn params_for(rng: &mut dyn RngCore, mode: usize, net: &HomNet) -> Result<ModeParams> {
    let s = net.domain();
    Ok(match mode {
        0 if s.topology() == TopologyId::EvSeqProduct => {
            ModeParams::Nr(NbhdDesc::product(0..net.frame_len().max(1), Rat::one())?)
        }
        0 => ModeParams::Nr(NbhdDesc::unit(s.topology(), s.kind())),
        1 => {
            let g = sample::element(rng, s.kind()).abs();
            let one = match s.kind() {
                SpaceKind::EvSeq => Element::Seq(EvSeq::constant(Rat::one())),
                SpaceKind::Qn(n) => Element::Vec(FinVec::new(vec![Rat::one(); n])?),
                SpaceKind::ZDiscrete => Element::int(1),
            };
            let g = g.add(&one)?;
            ModeParams::Br(SetDesc::interval(s, g.neg(), g)?)
        }
        _ => ModeParams::Cr,
    })
}

/// The sublinearity inequality and target membership for `T ↦ T⁺` along
/// closed-form nets, in all three topologies.
pub fn continuity_audit(seed: u64, nets: usize, samples: usize) -> CheckResult {
    run("lattice_continuity", || {
        let mut rng = sample::rng(seed);
        let mut checked = 0;
        for k in 0..nets {
            let (t, s, _) = random_pair(&mut rng, k)?;
            for mode in 0..3 {
                let p = params_for(&mut rng, mode, &t)?;
                let rep = lattice_continuity_audit(&t, &s, &p, 100_000, &mut rng, samples)?;
                checked += rep.inequalities + rep.memberships;
            }
        }
        Ok(checked)
    })
}

/// A second description of the same map.
fn restated(t: &HomDesc) -> Result<HomDesc> {
    Ok(match t {
        HomDesc::Diagonal(d) => HomDesc::DiagPlusFinite { diag: d.clone(), block: RatMatrix::zeros(2, 2) },
        HomDesc::DiagPlusFinite { diag, block } if block.is_zero() => HomDesc::Diagonal(diag.clone()),
        _ => t.add(&HomDesc::zero(t.kind()))?.neg().neg(),
    })
}

/// Certificates re-verify at `α₀` and `α₀ + 7`; limits are unique.
pub fn hausdorff_audit(seed: u64, audits: usize) -> CheckResult {
    run("hausdorff", || {
        let mut rng = sample::rng(seed);
        let mut checked = 0;
        for k in 0..audits {
            let (net, _, space) = random_pair(&mut rng, k)?;
            let crate::homspace::NetTerms::Closed { base, .. } = net.terms() else { unreachable!() };
            let limit = base.clone();
            let unit = NbhdDesc::unit(space.topology(), space.kind());
            let vs: Vec<NbhdDesc> =
                [Rat::one(), Rat::new(1, 3), Rat::new(1, 50)].iter().map(|r| unit.scaled(r)).collect();
            let params = params_for(&mut rng, (k / 3) % 3, &net)?;
            let reverify = |ok: bool, what: &str| {
                if ok {
                    Ok(())
                } else {
                    fail(format!("{what} fails re-verification for {net}"))
                }
            };
            let plain = match &params {
                ModeParams::Nr(u) => Some(nr_converges(&net, &limit, u, 100_000)?),
                ModeParams::Br(b) => Some(br_converges(&net, &limit, b, 100_000)?),
                ModeParams::Cr => None,
            };
            if let Some(c) = plain {
                let Some(cert) = c.cert() else { return fail(format!("{net} does not converge to its base")) };
                for v in &vs {
                    let a = cert.alpha0(v)?.alpha0;
                    reverify(cert.verify_at(v, a)? && cert.verify_at(v, a + 7)?, "certificate")?;
                    checked += 2;
                }
            } else {
                let CrConvergence::Convergent(cert) = cr_converges(&net, &limit, 100_000)? else {
                    return fail(format!("{net} does not converge to its base"));
                };
                for w in &vs {
                    for v in &vs {
                        let a = cert.alpha0(w, v)?.alpha0;
                        reverify(cert.verify_at(w, v, a)? && cert.verify_at(w, v, a + 7)?, "cr certificate")?;
                        checked += 2;
                    }
                }
            }
            limit_uniqueness_audit(&net, &limit, &restated(&limit)?, &params, 100_000)?;
            let corrupted = limit.add(&HomDesc::Identity(space.kind()))?;
            match limit_uniqueness_audit(&net, &limit, &corrupted, &params, 100_000) {
                Err(Error::PreconditionFailed(_)) => {}
                other => return fail(format!("corrupted limit {corrupted} for {net} gave {other:?}")),
            }
            checked += 2;
        }
        Ok(checked)
    })
}

/// Every invariant suite, sized relative to `cases` (1000 gives the full sizes).
pub fn invariant_suites(seed: u64, cases: usize) -> Vec<CheckResult> {
    let sized = |full: usize| (full * cases / 1000).max(1);
    let mut out: Vec<CheckResult> = Vec::new();
    for name in INSTANCES {
        let laws = laws(name, seed, cases.max(1)).expect("shipped instance");
        out.extend(laws.into_iter().map(|mut c| {
            c.name = format!("laws/{name}/{}", c.name);
            // the matrix ring is expected to fail the f-ring law
            if name == "matrix2_entrywise" && c.name.ends_with("/f_ring") {
                c.passed = !c.passed;
                c.name.push_str("_fails");
            }
            c
        }));
    }
    out.extend([
        beta_upper_bound(seed, sized(500)),
        solid_hull_audit(seed, sized(500)),
        decider_agreement(seed, sized(500)),
        fatou_all(),
        oracle_agreement(seed, sized(500), sized(500).min(100)),
        decomposition_audit(seed, sized(1000)),
        cone_extension_audit(seed, sized(200), 20),
        hom_lattice_laws(seed, sized(500)),
        directed_sup_audit(seed, sized(100)),
        identity_continuous(),
        positive_part_nr(seed, sized(200)),
        continuity_audit(seed, sized(30), 3),
        hausdorff_audit(seed, sized(50)),
    ]);
    out
}
