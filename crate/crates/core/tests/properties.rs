use proptest::prelude::*;

use lring::hom::{hom_join, hom_meet, modulus, negative_part, positive_part, sup_over_interval_oracle};
use lring::lattice::{sample, LatticeRing, Space, SpaceKind};
use lring::suites::{random_hom, random_matrix};

fn kinds() -> impl Strategy<Value = SpaceKind> {
    prop_oneof![(1usize..5).prop_map(SpaceKind::Qn), Just(SpaceKind::EvSeq)]
}

fn space(kind: SpaceKind) -> Space {
    match kind {
        SpaceKind::Qn(n) => Space::qn(n),
        _ => Space::product(),
    }
}

fn identities<R: LatticeRing>(r: &R, seed: u64) -> Result<(), TestCaseError>
where
    R::Elem: std::fmt::Debug,
{
    let mut rng = sample::rng(seed);
    let (x, y, z) = (r.sample(&mut rng), r.sample(&mut rng), r.sample(&mut rng));
    prop_assert_eq!(r.add(&r.join(&x, &y), &r.meet(&x, &y)), r.add(&x, &y));
    prop_assert_eq!(&r.sub(&r.pos(&x), &r.neg_part(&x)), &x);
    prop_assert!(r.leq(&r.abs(&r.add(&x, &y)), &r.add(&r.abs(&x), &r.abs(&y))));
    prop_assert_eq!(r.add(&r.join(&x, &y), &z), r.join(&r.add(&x, &z), &r.add(&y, &z)));
    prop_assert!(r.leq(&r.abs(&r.mul(&x, &y)), &r.mul(&r.abs(&x), &r.abs(&y))));
    Ok(())
}

proptest! {
    #[test]
    fn lattice_identities(seed in any::<u64>(), kind in kinds()) {
        identities(&space(kind), seed)?;
    }

    #[test]
    fn positive_part_is_the_interval_supremum(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = sample::rng(seed);
        let t = random_matrix(&mut rng, n);
        let x = sample::nonneg_element(&mut rng, SpaceKind::Qn(n));
        prop_assert_eq!(positive_part(&t).apply(&x).unwrap(), sup_over_interval_oracle(&t, &x).unwrap());
    }

    #[test]
    fn hom_lattice(seed in any::<u64>(), kind in kinds()) {
        let mut rng = sample::rng(seed);
        let (t, s) = (random_hom(&mut rng, kind), random_hom(&mut rng, kind));
        let (p, n) = (positive_part(&t), negative_part(&t));
        prop_assert_eq!(p.sub(&n).unwrap(), t.clone());
        prop_assert_eq!(p.add(&n).unwrap(), modulus(&t));
        prop_assert!(hom_meet(&p, &n).unwrap().is_zero());
        prop_assert_eq!(hom_join(&t, &s).unwrap().add(&hom_meet(&t, &s).unwrap()).unwrap(), t.add(&s).unwrap());
    }
}
