use rand::RngCore;

use crate::error::{Error, Result};
use crate::hom::{positive_part, HomDesc};
use crate::homspace::converge::{br_converges, cr_converges, nr_converges, Alpha0, CrConvergence};
use crate::homspace::net::HomNet;
use crate::lattice::{Element, EvSeq, FinVec, Space, SpaceKind};
use crate::scalar::Rat;
use crate::topology::{is_solid, NbhdDesc, SetDesc, TopologyId};

/// The data each topology needs beyond the net.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModeParams {
    Nr(NbhdDesc),
    Br(SetDesc),
    Cr,
}

fn unit_interval(space: Space) -> Result<SetDesc> {
    let one = match space.kind() {
        SpaceKind::Qn(n) => Element::Vec(FinVec::new(vec![Rat::one(); n])?),
        SpaceKind::EvSeq => Element::Seq(EvSeq::constant(Rat::one())),
        SpaceKind::ZDiscrete => Element::int(1),
    };
    SetDesc::interval(space, one.neg(), one)
}

fn converges(net: &HomNet, limit: &HomDesc, params: &ModeParams, horizon: u64) -> Result<bool> {
    Ok(match params {
        ModeParams::Nr(u) => nr_converges(net, limit, u, horizon)?.is_convergent(),
        ModeParams::Br(b) => {
            br_converges(net, limit, b, horizon)?.is_convergent()
                && br_converges(net, limit, &unit_interval(net.domain())?, horizon)?.is_convergent()
        }
        ModeParams::Cr => cr_converges(net, limit, horizon)?.is_convergent(),
    })
}

/// Two limits of the same net coincide.
///
/// A single bounded set only gives a seminorm, so in `br` the unit interval
/// is added to the given set; it separates points.
pub fn limit_uniqueness_audit(
    net: &HomNet,
    limit_a: &HomDesc,
    limit_b: &HomDesc,
    params: &ModeParams,
    horizon: u64,
) -> Result<()> {
    if net.domain().topology() == TopologyId::ZDiscrete && !matches!(params, ModeParams::Br(_)) {
        return Err(Error::InvalidArgument("the neighborhood {0} does not separate limits".into()));
    }
    for (name, l) in [("first", limit_a), ("second", limit_b)] {
        if !converges(net, l, params, horizon)? {
            return Err(Error::PreconditionFailed(format!("the net does not converge to the {name} limit {l}")));
        }
    }
    if limit_a != limit_b {
        return Err(Error::SoundnessBug(format!("the net converges to both {limit_a} and {limit_b}")));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct ContinuityReport {
    /// Checks of `T_α⁺(x) − S_α⁺(x) ≤ (T_α − S_α)⁺(x)`.
    pub inequalities: usize,
    /// Checks that `(T_α − S_α)⁺(x)` lies in the certified target.
    pub memberships: usize,
}

/// One target with the set it is certified on and its `α₀`.
struct Target {
    set: SetDesc,
    target: NbhdDesc,
    alpha0: Alpha0,
    solid: bool,
}

fn targets(diff: &HomNet, params: &ModeParams, horizon: u64) -> Result<Vec<Target>> {
    let cod = diff.codomain();
    let zero = HomDesc::zero(cod.kind());
    let unit = NbhdDesc::unit(cod.topology(), cod.kind());
    let vs: Vec<NbhdDesc> = [Rat::one(), Rat::new(1, 2), Rat::new(1, 10)].iter().map(|r| unit.scaled(r)).collect();
    let fail = || Error::PreconditionFailed(format!("T_a - S_a does not tend to 0 in {params:?}"));
    let mut out = Vec::new();
    match params {
        ModeParams::Nr(u) => {
            let c = nr_converges(diff, &zero, u, horizon)?;
            let cert = c.cert().ok_or_else(fail)?;
            for v in vs {
                out.push(Target { set: cert.set().clone(), alpha0: cert.alpha0(&v)?, target: v, solid: true });
            }
        }
        ModeParams::Br(b) => {
            let c = br_converges(diff, &zero, b, horizon)?;
            let cert = c.cert().ok_or_else(fail)?;
            let solid = is_solid(b).map(|s| s.solid).unwrap_or(false);
            for v in vs {
                out.push(Target { set: b.clone(), alpha0: cert.alpha0(&v)?, target: v, solid });
            }
        }
        ModeParams::Cr => {
            let CrConvergence::Convergent(cert) = cr_converges(diff, &zero, horizon)? else {
                return Err(fail());
            };
            for w in &vs {
                for v in &vs {
                    let set = SetDesc::nbhd(diff.domain(), cert.u_for(w)?)?;
                    out.push(Target { set, alpha0: cert.alpha0(w, v)?, target: v.times(w)?, solid: true });
                }
            }
        }
    }
    Ok(out)
}

/// Lattice operations are continuous: when `T_α − S_α → 0`, sampled
/// positive `x` in the certified set satisfy the sublinearity inequality and
/// `(T_α − S_α)⁺(x)` lands in the target from `α₀` on.
pub fn lattice_continuity_audit(
    t: &HomNet,
    s: &HomNet,
    params: &ModeParams,
    horizon: u64,
    rng: &mut dyn RngCore,
    samples: usize,
) -> Result<ContinuityReport> {
    let diff = t.minus(s)?;
    let mut report = ContinuityReport::default();
    for tg in targets(&diff, params, horizon)? {
        let a0 = tg.alpha0.alpha0;
        for alpha in [1, 2, a0, a0 + 1, a0 + 7] {
            let (tp, sp) = (positive_part(&t.term(alpha)?), positive_part(&s.term(alpha)?));
            let dp = positive_part(&diff.term(alpha)?);
            for _ in 0..samples {
                let x = tg.set.sample_member(rng)?.pos();
                let lhs = tp.apply(&x)?.sub(&sp.apply(&x)?)?;
                let rhs = dp.apply(&x)?;
                if !lhs.leq(&rhs)? {
                    return Err(Error::SoundnessBug(format!(
                        "T+(x) - S+(x) = {lhs} exceeds (T - S)+(x) = {rhs} at a = {alpha}"
                    )));
                }
                report.inequalities += 1;
                if tg.solid && alpha >= a0 {
                    if !tg.target.member(&rhs)? {
                        return Err(Error::SoundnessBug(format!(
                            "(T - S)+({x}) = {rhs} left {} at a = {alpha}",
                            tg.target
                        )));
                    }
                    report.memberships += 1;
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::RatMatrix;
    use crate::lattice::sample;

    #[test]
    fn corrupted_limit_fails_the_precondition() {
        let q = Space::qn(2);
        let t = HomDesc::matrix_ints(&[&[1, -2], &[0, 3]]);
        let m = HomDesc::matrix_ints(&[&[1, 1], &[-1, 0]]);
        let net = HomNet::closed(q, q, t.clone(), vec![(m, 1)]).unwrap();
        let u = ModeParams::Nr(NbhdDesc::unit(TopologyId::QnBox, q.kind()));
        assert_eq!(limit_uniqueness_audit(&net, &t, &t, &u, 100), Ok(()));
        let bad = HomDesc::matrix_ints(&[&[1, -2], &[0, 4]]);
        assert!(matches!(limit_uniqueness_audit(&net, &t, &bad, &u, 100), Err(Error::PreconditionFailed(_))));
        assert!(matches!(
            limit_uniqueness_audit(&net, &t, &bad, &ModeParams::Cr, 100),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn continuity_on_sequences() {
        let s = Space::supnorm();
        let a = HomDesc::diag_plus_finite(EvSeq::from_ints(&[2, -1], 1), RatMatrix::from_ints(&[&[0, -3], &[1, 0]]))
            .unwrap();
        let b = HomDesc::Diagonal(EvSeq::from_ints(&[-1], 2));
        let t = HomNet::closed(s, s, a.clone(), vec![(b.clone(), 1)]).unwrap();
        let sn = HomNet::constant(s, s, a).unwrap();
        let mut r = sample::rng(3);
        let u = ModeParams::Nr(NbhdDesc::SupNorm { radius: Rat::one() });
        let rep = lattice_continuity_audit(&t, &sn, &u, 1000, &mut r, 10).unwrap();
        assert_eq!(rep.inequalities, 150);
        assert_eq!(rep.memberships, 100);
        let rep = lattice_continuity_audit(&t, &sn, &ModeParams::Cr, 1000, &mut r, 4).unwrap();
        assert_eq!(rep.inequalities, 9 * 5 * 4);
        let bad = HomNet::constant(s, s, b).unwrap();
        assert!(matches!(lattice_continuity_audit(&t, &bad, &u, 10, &mut r, 1), Err(Error::PreconditionFailed(_))));
    }
}
