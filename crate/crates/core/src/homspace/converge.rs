use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::hom::HomDesc;
use crate::homspace::net::{HomNet, NetTerms};
use crate::lattice::{Multiplication, Space, SpaceKind};
use crate::scalar::Rat;
use crate::topology::{set_ring_bounded, Bound, BoundFn, NbhdDesc, SetDesc, TopologyId};

/// The three topologies on bounded homomorphisms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    /// Uniform convergence on one zero neighborhood.
    Nr,
    /// Uniform convergence on bounded sets.
    Br,
    /// Convergence against the products `V·W`.
    Cr,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Nr => "nr",
            Mode::Br => "br",
            Mode::Cr => "cr",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        [Mode::Nr, Mode::Br, Mode::Cr]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown mode {s:?}")))
    }
}

/// `β` fits inside the box `v` at every coordinate `v` constrains.
pub fn bounds_within(beta: &BoundFn, v: &NbhdDesc) -> bool {
    let len = beta.frame_len().max(v.frame_len()) + 1;
    (0..len).all(|i| match (v.radius_at(i), beta.at(i)) {
        (None, _) => true,
        (Some(_), Bound::Infinite) => false,
        (Some(e), Bound::Finite(b)) => b <= e,
    })
}

pub(crate) fn check_base(space: Space, u: &NbhdDesc) -> Result<()> {
    u.validate()?;
    if !u.fits(space.kind()) || u.topology() != space.topology() {
        return Err(Error::InvalidNeighborhood(format!("{u} is not a base neighborhood of {space}")));
    }
    Ok(())
}

/// The base member constraining `index` by `radius`.
pub(crate) fn nbhd_at(space: Space, index: usize, radius: Rat) -> NbhdDesc {
    match (space.topology(), space.kind()) {
        (TopologyId::QnBox, SpaceKind::Qn(n)) => NbhdDesc::QnBox { radii: vec![radius; n] },
        (TopologyId::EvSeqProduct, _) => NbhdDesc::Product { coords: [index].into(), radius },
        (TopologyId::EvSeqSupNorm, _) => NbhdDesc::SupNorm { radius },
        _ => NbhdDesc::ZeroSingleton,
    }
}

fn rat(n: u64) -> Rat {
    Rat::from_bigint(BigInt::from(n))
}

fn tail_value(terms: &[(Rat, u32)], alpha: u64) -> Rat {
    let a = rat(alpha);
    terms.iter().fold(Rat::zero(), |acc, (b, p)| acc + b / &a.pow(*p))
}

/// The least `α ≥ 1` with `Σ b_k / α^{p_k} ≤ ε`.
fn least_alpha(terms: &[(Rat, u32)], eps: &Rat) -> Result<u64> {
    if tail_value(terms, 1) <= *eps {
        return Ok(1);
    }
    if !eps.is_positive() {
        return Err(Error::SoundnessBug("positive bound against a zero radius".into()));
    }
    let mut hi = 2u64;
    while tail_value(terms, hi) > *eps {
        hi = hi.checked_mul(2).ok_or_else(|| Error::InvalidArgument(format!("radius {eps} is too small")))?;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tail_value(terms, mid) <= *eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Behavior of one coordinate of `(T_α − T)(X)` as `α` grows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SlotRule {
    /// `β_i ≤ Σ b_k / α^{p_k}` for every `α` past the table.
    Converges(Vec<(Rat, u32)>),
    /// `β_i` stays near this value (or is infinite) for all large `α`.
    Diverges(Bound),
}

#[derive(Clone, Debug)]
struct Analysis {
    net: HomNet,
    limit: HomDesc,
    set: SetDesc,
    /// One rule per slot; for sequences the last slot stands for the tail.
    rules: Vec<SlotRule>,
    start: u64,
    horizon: u64,
}

impl Analysis {
    fn new(net: &HomNet, limit: &HomDesc, set: SetDesc, horizon: u64) -> Result<Analysis> {
        let kind = net.domain().kind();
        if limit.kind() != kind || set.space().kind() != kind {
            return Err(Error::InvalidArgument(format!("{limit} does not act on {}", net.domain())));
        }
        let image = |h: &HomDesc| SetDesc::image(net.codomain(), h.clone(), set.clone())?.coordinate_bounds();
        let (c, steps, start) = match net.terms() {
            NetTerms::Closed { base, .. } => {
                let steps = net.merged_steps()?.iter().map(|(s, p)| Ok((image(s)?, *p))).collect::<Result<Vec<_>>>()?;
                (image(&base.sub(limit)?)?, steps, 1)
            }
            NetTerms::Table(ts) => {
                let m = ts.len() as u64;
                if m > horizon {
                    return Err(Error::HorizonExceeded { needed: m, horizon });
                }
                (image(&net.term(m)?.sub(limit)?)?, vec![], m)
            }
        };
        let slots = match kind {
            SpaceKind::Qn(n) => n,
            SpaceKind::EvSeq => steps.iter().map(|(b, _)| b.frame_len()).fold(c.frame_len(), usize::max) + 1,
            SpaceKind::ZDiscrete => 1,
        };
        let discrete = net.codomain().topology() == TopologyId::ZDiscrete;
        let rules = (0..slots)
            .map(|i| {
                let ci = c.at(i);
                if !ci.is_zero() {
                    return SlotRule::Diverges(ci);
                }
                let bs: Vec<(Bound, u32)> = steps.iter().map(|(b, p)| (b.at(i), *p)).collect();
                if bs.iter().any(|(b, _)| !b.is_finite()) {
                    return SlotRule::Diverges(Bound::Infinite);
                }
                let terms: Vec<(Rat, u32)> = bs
                    .into_iter()
                    .filter_map(|(b, p)| b.finite().filter(|b| b.is_positive()).map(|b| (b.clone(), p)))
                    .collect();
                if discrete && !terms.is_empty() {
                    SlotRule::Diverges(Bound::zero())
                } else {
                    SlotRule::Converges(terms)
                }
            })
            .collect();
        Ok(Analysis { net: net.clone(), limit: limit.clone(), set, rules, start, horizon })
    }

    fn converges(&self) -> bool {
        self.rules.iter().all(|r| matches!(r, SlotRule::Converges(_)))
    }

    /// `(slot, radius)` for every coordinate `v` constrains.
    fn constraints(&self, v: &NbhdDesc) -> Vec<(usize, Rat)> {
        let last = self.rules.len() - 1;
        let n = match self.net.domain().kind() {
            SpaceKind::EvSeq => last.max(v.frame_len()) + 1,
            _ => self.rules.len(),
        };
        (0..n).filter_map(|i| v.radius_at(i).map(|e| (i.min(last), e))).collect()
    }

    fn image_bounds(&self, alpha: u64) -> Result<BoundFn> {
        let d = self.net.term(alpha)?.sub(&self.limit)?;
        SetDesc::image(self.net.codomain(), d, self.set.clone())?.coordinate_bounds()
    }

    fn contained(&self, v: &NbhdDesc, alpha: u64) -> Result<bool> {
        Ok(bounds_within(&self.image_bounds(alpha)?, v))
    }

    fn alpha0(&self, v: &NbhdDesc) -> Result<Alpha0> {
        let mut upper = self.start;
        for (slot, eps) in self.constraints(v) {
            match &self.rules[slot] {
                SlotRule::Diverges(_) => {
                    return Err(Error::PreconditionFailed(format!("coordinate {slot} of the net does not converge")));
                }
                SlotRule::Converges(terms) => upper = upper.max(least_alpha(terms, &eps)?),
            }
        }
        if !self.contained(v, upper)? {
            return Err(Error::SoundnessBug(format!("bound solution {upper} fails against {v}")));
        }
        let (mut alpha0, mut least) = (upper, true);
        while alpha0 > 1 {
            if upper - alpha0 == self.horizon {
                least = false;
                break;
            }
            if !self.contained(v, alpha0 - 1)? {
                break;
            }
            alpha0 -= 1;
        }
        Ok(Alpha0 { alpha0, upper, least })
    }

    fn refute(&self) -> Result<Refutation> {
        let pick =
            |want: fn(&Bound) -> bool| self.rules.iter().position(|r| matches!(r, SlotRule::Diverges(b) if want(b)));
        let index = pick(|b| !b.is_finite())
            .or_else(|| pick(|b| !b.is_zero()))
            .or_else(|| pick(|_| true))
            .ok_or_else(|| Error::SoundnessBug("no diverging coordinate".into()))?;
        let SlotRule::Diverges(limit) = self.rules[index].clone() else { unreachable!() };
        let radius = match &limit {
            Bound::Infinite => Rat::one(),
            Bound::Finite(c) if c.is_positive() => c / &Rat::from_int(2),
            Bound::Finite(_) => Rat::zero(),
        };
        let witness = nbhd_at(self.net.codomain(), index, radius);
        let mut candidates = vec![self.start, self.start + 1, self.start + 7];
        candidates.extend((1..40).map(|k| self.start << k));
        let mut failing = Vec::new();
        for a in candidates {
            if !self.contained(&witness, a)? {
                failing.push(a);
                if failing.len() == 3 {
                    break;
                }
            }
        }
        if failing.is_empty() {
            return Err(Error::SoundnessBug(format!("diverging coordinate {index} stays inside {witness}")));
        }
        Ok(Refutation { witness, index, limit, failing })
    }

    fn formula(&self) -> String {
        let last = self.rules.len() - 1;
        let tail = self.net.domain().kind() == SpaceKind::EvSeq;
        let mut parts: Vec<(usize, usize, String)> = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            let text = match r {
                SlotRule::Diverges(_) => "none".to_string(),
                SlotRule::Converges(terms) => slot_formula(terms),
            };
            match parts.last_mut() {
                Some((_, hi, t)) if *t == text => *hi = i,
                _ => parts.push((i, i, text)),
            }
        }
        let start = if self.start > 1 { format!("max({}, ", self.start) } else { String::new() };
        let close = if self.start > 1 { ")" } else { "" };
        parts
            .into_iter()
            .map(|(lo, hi, t)| {
                let range = match (lo == hi, tail && hi == last) {
                    (_, true) => format!("i>={lo}"),
                    (true, false) => format!("i={lo}"),
                    (false, false) => format!("{lo}<=i<={hi}"),
                };
                format!("{range}: {start}{t}{close}")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

fn slot_formula(terms: &[(Rat, u32)]) -> String {
    match terms {
        [] => "1".into(),
        [(b, 1)] => format!("ceil({b}/eps)"),
        [(b, p)] => format!("ceil(({b}/eps)^(1/{p}))"),
        _ => {
            let sum: Vec<String> = terms.iter().map(|(b, p)| format!("{b}/a^{p}")).collect();
            format!("least a with {} <= eps", sum.join(" + "))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Alpha0 {
    /// From this index on the containment holds.
    pub alpha0: u64,
    /// The index the coefficient bounds alone guarantee.
    pub upper: u64,
    /// `alpha0 − 1` was checked and fails (or `alpha0 = 1`).
    pub least: bool,
}

/// A rule producing `α₀(V)` with `(T_α − T)(X) ⊆ V` for every `α ≥ α₀`.
#[derive(Clone, Debug)]
pub struct ConvergenceCert {
    mode: Mode,
    analysis: Analysis,
}

impl ConvergenceCert {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The set `X` (the neighborhood `U` or the bounded set `B`).
    pub fn set(&self) -> &SetDesc {
        &self.analysis.set
    }

    pub fn rules(&self) -> &[SlotRule] {
        &self.analysis.rules
    }

    pub fn alpha0(&self, v: &NbhdDesc) -> Result<Alpha0> {
        check_base(self.analysis.net.codomain(), v)?;
        self.analysis.alpha0(v)
    }

    /// Exact check of `(T_α − T)(X) ⊆ V`.
    pub fn verify_at(&self, v: &NbhdDesc, alpha: u64) -> Result<bool> {
        check_base(self.analysis.net.codomain(), v)?;
        self.analysis.contained(v, alpha)
    }

    /// `α₀` as a function of the radius `eps` of `V` at coordinate `i`.
    pub fn formula(&self) -> String {
        self.analysis.formula()
    }
}

/// A `V` that `(T_α − T)(X)` leaves for arbitrarily large `α`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Refutation {
    pub witness: NbhdDesc,
    pub index: usize,
    /// The limiting bound at `index`; zero only on the integers.
    pub limit: Bound,
    /// Indices checked exactly to leave the witness.
    pub failing: Vec<u64>,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Convergence {
    Convergent(ConvergenceCert),
    NotConvergent(Refutation),
}

impl Convergence {
    pub fn is_convergent(&self) -> bool {
        matches!(self, Convergence::Convergent(_))
    }

    pub fn cert(&self) -> Option<&ConvergenceCert> {
        match self {
            Convergence::Convergent(c) => Some(c),
            Convergence::NotConvergent(_) => None,
        }
    }
}

fn decide(mode: Mode, analysis: Analysis) -> Result<Convergence> {
    if analysis.converges() {
        Ok(Convergence::Convergent(ConvergenceCert { mode, analysis }))
    } else {
        Ok(Convergence::NotConvergent(analysis.refute()?))
    }
}

/// `T_α → T` uniformly on the base neighborhood `u`.
pub fn nr_converges(net: &HomNet, limit: &HomDesc, u: &NbhdDesc, horizon: u64) -> Result<Convergence> {
    check_base(net.domain(), u)?;
    let set = SetDesc::nbhd(net.domain(), u.clone())?;
    decide(Mode::Nr, Analysis::new(net, limit, set, horizon)?)
}

/// `T_α → T` uniformly on the ring-bounded set `b`.
pub fn br_converges(net: &HomNet, limit: &HomDesc, b: &SetDesc, horizon: u64) -> Result<Convergence> {
    if b.space() != net.domain() {
        return Err(Error::InvalidArgument(format!("{b} does not live in {}", net.domain())));
    }
    if !set_ring_bounded(b)?.is_bounded() {
        return Err(Error::NotBounded(b.to_string()));
    }
    decide(Mode::Br, Analysis::new(net, limit, b.clone(), horizon)?)
}

/// For every `W` a `U(W)`, and for every `V` an `α₀` with
/// `(T_α − T)(U(W)) ⊆ V·W` from `α₀` on.
#[derive(Clone, Debug)]
pub struct CrCert {
    net: HomNet,
    limit: HomDesc,
    horizon: u64,
}

impl CrCert {
    pub fn u_for(&self, w: &NbhdDesc) -> Result<NbhdDesc> {
        check_base(self.net.codomain(), w)?;
        let domain = self.net.domain();
        Ok(match domain.topology() {
            TopologyId::EvSeqProduct => {
                let coords = match w {
                    NbhdDesc::Product { coords, .. } => feeders(&self.net, &self.limit, coords),
                    _ => (0..frame_len(&self.net, &self.limit)).collect(),
                };
                NbhdDesc::Product { coords, radius: Rat::one() }
            }
            top => NbhdDesc::unit(top, domain.kind()),
        })
    }

    fn analysis(&self, w: &NbhdDesc) -> Result<Analysis> {
        let set = SetDesc::nbhd(self.net.domain(), self.u_for(w)?)?;
        Analysis::new(&self.net, &self.limit, set, self.horizon)
    }

    pub fn alpha0(&self, w: &NbhdDesc, v: &NbhdDesc) -> Result<Alpha0> {
        check_base(self.net.codomain(), v)?;
        self.analysis(w)?.alpha0(&v.times(w)?)
    }

    /// Exact check of `(T_α − T)(U(W)) ⊆ V·W`.
    pub fn verify_at(&self, w: &NbhdDesc, v: &NbhdDesc, alpha: u64) -> Result<bool> {
        check_base(self.net.codomain(), v)?;
        self.analysis(w)?.contained(&v.times(w)?, alpha)
    }

    pub fn formula(&self) -> Result<String> {
        let w = NbhdDesc::unit(self.net.codomain().topology(), self.net.codomain().kind());
        Ok(format!("U(W) = {}; eps = radius of V.W; {}", self.u_for(&w)?, self.analysis(&w)?.formula()))
    }
}

fn frame_len(net: &HomNet, limit: &HomDesc) -> usize {
    net.frame_len().max(limit.frame_len())
}

/// Domain coordinates that feed the coordinates in `coords`.
fn feeders(net: &HomNet, limit: &HomDesc, coords: &BTreeSet<usize>) -> BTreeSet<usize> {
    let len = frame_len(net, limit);
    let frame = Frame::for_kind(SpaceKind::EvSeq, len);
    let mats: Vec<_> = net.homs().into_iter().chain([limit]).map(|h| h.materialize(frame)).collect();
    let mut out = BTreeSet::new();
    for &k in coords {
        if k >= len {
            out.insert(k);
            continue;
        }
        for m in &mats {
            out.extend((0..len).filter(|&j| !m.get(k, j).is_zero()));
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrRefutation {
    /// No `U` brings the net inside `V·W` for every `V`.
    pub w: NbhdDesc,
    /// The best available `U(W)` and a `V` it fails against.
    pub u: NbhdDesc,
    pub v: NbhdDesc,
    pub index: usize,
    pub failing: Vec<u64>,
}

#[derive(Clone, Debug)]
pub enum CrConvergence {
    Convergent(CrCert),
    NotConvergent(CrRefutation),
}

impl CrConvergence {
    pub fn is_convergent(&self) -> bool {
        matches!(self, CrConvergence::Convergent(_))
    }
}

/// `T_α → T` in the topology generated by the products `V·W`.
pub fn cr_converges(net: &HomNet, limit: &HomDesc, horizon: u64) -> Result<CrConvergence> {
    let (domain, codomain) = (net.domain(), net.codomain());
    if codomain.mul() == Multiplication::Zero {
        return Err(Error::VacuousProduct);
    }
    let cert = CrCert { net: net.clone(), limit: limit.clone(), horizon };
    // the neighborhood U can adapt to W; this set has the bounds of the best U
    // at every coordinate some W constrains
    let probe = match (domain.topology(), codomain.topology()) {
        (TopologyId::EvSeqProduct, TopologyId::EvSeqProduct) => {
            SetDesc::nbhd(domain.with_topology(TopologyId::EvSeqSupNorm)?, NbhdDesc::SupNorm { radius: Rat::one() })?
        }
        _ => {
            let w = NbhdDesc::unit(codomain.topology(), codomain.kind());
            SetDesc::nbhd(domain, cert.u_for(&w)?)?
        }
    };
    let analysis = Analysis::new(net, limit, probe, horizon)?;
    if analysis.converges() {
        return Ok(CrConvergence::Convergent(cert));
    }
    let r = analysis.refute()?;
    let w = nbhd_at(codomain, r.index, Rat::one());
    let u = cert.u_for(&w)?;
    Ok(CrConvergence::NotConvergent(CrRefutation { w, u, v: r.witness, index: r.index, failing: r.failing }))
}
