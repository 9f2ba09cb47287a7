use lring::hom::{
    directed_sup, extend_from_cone, positive_part, riesz_decompose, sup_over_interval_oracle, ConeMapDesc, HomDesc,
    RatMatrix,
};
use lring::homspace::{classify, cr_converges, nr_converges, BoundedVerdict, CrConvergence, HomNet, Reading};
use lring::lattice::{archimedean_witness, sample, Archimedean, Element, EvSeq, Multiplication, Space, SpaceKind};
use lring::topology::{
    is_solid, set_group_bounded, set_ring_bounded, Bound, GroupVerdict, NbhdDesc, RingVerdict, SetDesc, TopologyId,
};
use lring::{Error, Rat};

fn ev(prefix: &[i64], tail: i64) -> Element {
    Element::seq(prefix, tail)
}

fn tail_over_alpha() -> HomNet {
    let s = Space::supnorm();
    let zero = HomDesc::Diagonal(EvSeq::zero());
    HomNet::closed(s, s, zero, vec![(HomDesc::Diagonal(EvSeq::constant(Rat::one())), 1)]).unwrap()
}

#[test]
fn lattice_operations() {
    let q2 = Space::qn(2);
    assert_eq!(q2.join(&Element::vec(&[1, -2]), &Element::vec(&[0, 3])).unwrap(), Element::vec(&[1, 3]));
    assert_eq!(q2.meet(&Element::vec(&[1, -2]), &Element::vec(&[0, 3])).unwrap(), Element::vec(&[0, -2]));
    assert_eq!(Space::product().join(&ev(&[1, -1], 0), &ev(&[0], 1)).unwrap(), ev(&[1], 1));
    let x = Element::vec(&[2, -3, 0]);
    assert_eq!(
        (x.pos(), x.neg_part(), x.abs()),
        (Element::vec(&[2, 0, 0]), Element::vec(&[0, 3, 0]), Element::vec(&[2, 3, 0]))
    );
    assert_eq!(q2.ring_mul(&Element::vec(&[1, -2]), &Element::vec(&[3, 4])).unwrap(), Element::vec(&[3, -8]));
    let zero = Space::evseq(Multiplication::Zero, TopologyId::EvSeqProduct).unwrap();
    assert_eq!(zero.ring_mul(&ev(&[4], 2), &ev(&[1], 1)).unwrap(), ev(&[], 0));
}

#[test]
fn archimedean_witnesses() {
    let w = archimedean_witness(&Space::qn(1), &Element::vec(&[1]), &Element::vec(&[100])).unwrap();
    assert_eq!(w, Archimedean::Witness(101.into()));
    let w = archimedean_witness(&Space::qn(2), &Element::vec(&[-1, 0]), &Element::vec(&[0, 0])).unwrap();
    assert_eq!(w, Archimedean::XNonPositive);
    let half = Element::Seq(EvSeq::constant(Rat::new(1, 2)));
    assert_eq!(archimedean_witness(&Space::product(), &half, &ev(&[], 10)).unwrap(), Archimedean::Witness(21.into()));
}

#[test]
fn neighborhoods_and_sets() {
    let x = ev(&[1, -1], 5);
    assert!(NbhdDesc::product([0, 1], Rat::one()).unwrap().member(&x).unwrap());
    assert!(!NbhdDesc::supnorm(Rat::one()).unwrap().member(&x).unwrap());
    assert!(NbhdDesc::qn_box(vec![Rat::one(), Rat::from_int(2)]).unwrap().member(&Element::vec(&[1, -2])).unwrap());

    let q2 = Space::qn(2);
    let hull = lring::topology::solid_hull(q2, vec![Element::vec(&[1, 0]), Element::vec(&[0, 1])]).unwrap();
    assert!(!hull.contains(&Element::vec(&[1, 1])).unwrap());
    let single = SetDesc::finite(q2, vec![Element::vec(&[1, 1])]).unwrap();
    let w = is_solid(&single).unwrap().witness.expect("not solid");
    assert!(!single.contains(&w.0).unwrap() && w.0.abs().leq(&w.1.abs()).unwrap());

    let d = HomDesc::Diagonal(EvSeq::from_ints(&[3], 1));
    let ball = SetDesc::nbhd(Space::supnorm(), NbhdDesc::supnorm(Rat::one()).unwrap()).unwrap();
    let beta = SetDesc::image(Space::supnorm(), d, ball).unwrap().coordinate_bounds().unwrap();
    assert_eq!((beta.at(0), beta.at(5)), (Bound::Finite(Rat::from_int(3)), Bound::Finite(Rat::one())));
}

#[test]
fn boundedness_deciders() {
    let p = Space::product();
    let u0 = SetDesc::nbhd(p, NbhdDesc::product([0], Rat::one()).unwrap()).unwrap();
    let u1 = NbhdDesc::product([1], Rat::one()).unwrap();
    assert_eq!(set_ring_bounded(&u0).unwrap(), RingVerdict::NotBounded { witness: u1.clone() });
    assert_eq!(set_group_bounded(&u0).unwrap(), GroupVerdict::NotBounded { witness: u1 });

    let q2 = Space::qn(2);
    let s = SetDesc::finite(q2, vec![Element::vec(&[10, 0])]).unwrap();
    let GroupVerdict::Bounded(cert) = set_group_bounded(&s).unwrap() else { panic!("bounded") };
    assert_eq!(cert.n_for(&NbhdDesc::qn_box(vec![Rat::one(), Rat::one()]).unwrap()).unwrap(), 10.into());

    let five = SetDesc::finite(Space::z_discrete(), vec![Element::int(5)]).unwrap();
    assert_eq!(set_group_bounded(&five).unwrap(), GroupVerdict::NotBounded { witness: NbhdDesc::ZeroSingleton });
}

#[test]
fn positive_parts_match_the_oracle() {
    let t = HomDesc::matrix_ints(&[&[1, -2], &[-3, 4]]);
    assert_eq!(t.apply(&Element::vec(&[1, 1])).unwrap(), Element::vec(&[-1, 1]));
    assert_eq!(sup_over_interval_oracle(&t, &Element::vec(&[1, 1])).unwrap(), Element::vec(&[1, 4]));
    assert_eq!(positive_part(&t), HomDesc::matrix_ints(&[&[1, 0], &[0, 4]]));
    let mut rng = sample::rng(0);
    for _ in 0..200 {
        let x = sample::nonneg_element(&mut rng, SpaceKind::Qn(2));
        assert_eq!(positive_part(&t).apply(&x).unwrap(), sup_over_interval_oracle(&t, &x).unwrap());
    }
    let d = HomDesc::Diagonal(EvSeq::from_ints(&[-1, 2], -3));
    assert_eq!(positive_part(&d), HomDesc::Diagonal(EvSeq::from_ints(&[0, 2], 0)));
}

#[test]
fn decomposition_and_cone_extension() {
    let (x1, x2) =
        riesz_decompose(&Space::qn(2), &Element::vec(&[1, 1]), &Element::vec(&[2, 0]), &Element::vec(&[0, 2])).unwrap();
    assert_eq!((x1, x2), (Element::vec(&[1, 0]), Element::vec(&[0, 1])));

    let t = HomDesc::matrix_ints(&[&[1, 1], &[0, 1]]);
    let e = extend_from_cone(&ConeMapDesc::new(t.clone(), vec![]).unwrap(), &mut sample::rng(0)).unwrap();
    assert_eq!(e.hom.apply(&Element::vec(&[-1, 2])).unwrap(), Element::vec(&[1, 2]));
    assert_eq!(e.hom, t);
}

#[test]
fn directed_suprema() {
    let a = HomDesc::matrix_ints(&[&[1, 0], &[0, 0]]);
    let b = HomDesc::matrix_ints(&[&[0, 0], &[0, 1]]);
    let id = HomDesc::Matrix(RatMatrix::identity(2));
    assert_eq!(directed_sup(&[a, b], &id).unwrap(), id);
    assert!(matches!(directed_sup(&[], &id), Err(Error::EmptyInput(_))));
}

#[test]
fn counterexample_labels() {
    let p = Space::product();
    let label = classify(&HomDesc::Identity(SpaceKind::EvSeq), p, p).unwrap();
    assert!(label.order_bounded && label.continuous.holds());
    for r in [Reading::Ring, Reading::Group] {
        assert!(!label.nr.get(r).holds() && label.br.get(r).holds());
    }
    let zero = Space::evseq(Multiplication::Zero, TopologyId::EvSeqProduct).unwrap();
    let label = classify(&HomDesc::Identity(SpaceKind::EvSeq), zero, zero).unwrap();
    assert!(matches!(label.nr.ring, BoundedVerdict::Bounded { vacuous: true, .. }));
    assert!(!label.nr.group.holds() && !label.br.group.holds());
    let label = classify(&HomDesc::Identity(SpaceKind::EvSeq), p, Space::supnorm()).unwrap();
    assert!(label.order_bounded && !label.continuous.holds());
}

#[test]
fn convergence_certificates() {
    let net = tail_over_alpha();
    let zero = HomDesc::Diagonal(EvSeq::zero());
    let c = nr_converges(&net, &zero, &NbhdDesc::supnorm(Rat::one()).unwrap(), 1000).unwrap();
    let cert = c.cert().expect("convergent");
    for (eps, a0) in [(Rat::new(1, 10), 10), (Rat::new(3, 7), 3), (Rat::from_int(2), 1)] {
        assert_eq!(cert.alpha0(&NbhdDesc::supnorm(eps).unwrap()).unwrap().alpha0, a0);
    }
    let CrConvergence::Convergent(cr) = cr_converges(&net, &zero, 1000).unwrap() else { panic!("convergent") };
    let (w, v) = (NbhdDesc::supnorm(Rat::new(1, 2)).unwrap(), NbhdDesc::supnorm(Rat::new(1, 3)).unwrap());
    assert_eq!(cr.alpha0(&w, &v).unwrap().alpha0, 6);

    let p = Space::product();
    let id = HomNet::constant(p, p, HomDesc::Identity(SpaceKind::EvSeq)).unwrap();
    let c = nr_converges(&id, &zero, &NbhdDesc::product([0], Rat::one()).unwrap(), 1000).unwrap();
    assert!(!c.is_convergent());
}
