use drinfeld_core::bundle::*;
use drinfeld_core::linalg::Mat;
use drinfeld_core::oracle::*;
use drinfeld_core::random::{random_bundle, rng};
use drinfeld_core::rep::{intertwiner_space, GModule};
use drinfeld_core::zoo::Zoo;
use drinfeld_core::{Cyclo, Error, FiniteGroup};
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn zoo() -> &'static Zoo {
    static Z: OnceLock<Zoo> = OnceLock::new();
    Z.get_or_init(Zoo::builtin)
}

fn simples_of(name: &str) -> Vec<Simple> {
    zoo().simples(name).unwrap()
}

fn group(name: &str) -> Arc<FiniteGroup> {
    zoo().get(name).unwrap().group.clone()
}

#[test]
fn q_on_the_reduced_unit_of_z2() {
    let u = EquivariantBundle::unit_reduced(group("Z2"));
    let q = q_projector(&u, &u).unwrap();
    assert_eq!((q.rows, q.cols), (4, 4));
    assert_eq!(q.rank(), 2);
    assert_eq!(q.mul(&q), q);
    let rep = q_report(&u, &u).unwrap();
    assert!(rep.pass());
    assert_eq!(rep.image_graded_dims, vec![1, 1]);
}

#[test]
fn q_image_matches_fiberwise_products_on_s3() {
    let s = simples_of("S3");
    let mut r = rng(17);
    for _ in 0..5 {
        let v = random_bundle(&s, 2, &mut r);
        let w = random_bundle(&s, 2, &mut r);
        let rep = q_report(&v, &w).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert!(rep.matches_block_formula && rep.isomorphic);
        assert_eq!(rep.image_graded_dims, reduced_tensor(&v, &w).unwrap().fiber_dims());
    }
}

#[test]
fn super_q_lands_at_twisted_grades() {
    for name in ["Z4", "Q8"] {
        let s = simples_of(name);
        let mut r = rng(23);
        for _ in 0..4 {
            let v = random_bundle(&s, 2, &mut r);
            let w = random_bundle(&s, 2, &mut r);
            let rep = q_report_super(&v, &w).unwrap();
            assert!(rep.pass(), "{name}: {rep:?}");
            assert_eq!(rep.image_graded_dims, reduced_tensor_z(&v, &w).unwrap().fiber_dims());
        }
    }
}

#[test]
fn plain_and_super_q_differ_on_odd_bundles() {
    // Regression: for odd V and even W the Koszul-signed crossings move the
    // image from matched grades to grades differing by z, so the two
    // projectors differ.
    let s = simples_of("Z4");
    let z = group("Z4").z().unwrap();
    let odd = s.iter().find(|x| x.bundle.parity_adapted().unwrap().parity.unwrap().iter().all(|&p| p == 1)).unwrap();
    let v = &odd.bundle;
    let w = s
        .iter()
        .find(|x| {
            x.bundle.grade[0] == group("Z4").mul(v.grade[0], z)
                && x.bundle.dim() == 1
                && x.bundle.parity_adapted().unwrap().parity.unwrap()[0] == 0
        })
        .unwrap();
    let plain = q_projector(v, &w.bundle).unwrap();
    let sup = q_projector_super(v, &w.bundle).unwrap();
    assert_ne!(plain, sup);
    assert_eq!(plain.rank(), 0);
    assert_eq!(sup.rank(), 1);
}

#[test]
fn super_q_with_trivial_z_is_plain_q() {
    let g = group("S3");
    let gz = Arc::new((*g).clone().with_z(g.identity()).unwrap());
    let mut r = rng(8);
    let s: Vec<Simple> = simples_of("S3")
        .into_iter()
        .map(|x| Simple { bundle: EquivariantBundle::new(gz.clone(), x.bundle.grade, x.bundle.action).unwrap(), ..x })
        .collect();
    let v = random_bundle(&s, 2, &mut r);
    let w = random_bundle(&s, 2, &mut r);
    assert_eq!(q_projector(&v, &w).unwrap(), q_projector_super(&v, &w).unwrap());
    assert!(q_projector_super(&simples_of("S3")[0].bundle, &simples_of("S3")[0].bundle).is_err());
}

#[test]
fn pivotal_identities_on_s3_at_conductor_24() {
    let e = zoo().get("S3").unwrap();
    let u = EquivariantBundle::unit_reduced(e.group.clone());
    let rep = pivotal_checks(&u, &e.irreps, Normalization::Correct).unwrap();
    assert_eq!(rep.conductor, 24);
    assert!(rep.pass(), "{:?}", rep.checks);
    assert_eq!(rep.snake_scalar.as_deref(), Some("1"));
    for s in simples_of("S3") {
        assert!(pivotal_checks(&s.bundle, &e.irreps, Normalization::Correct).unwrap().pass(), "{}", s.label);
    }
}

#[test]
fn dropping_the_inverse_sqrt_scales_the_snake_by_the_order() {
    for name in ["Z2", "S3", "Q8"] {
        let e = zoo().get(name).unwrap();
        let u = EquivariantBundle::unit_reduced(e.group.clone());
        let rep = pivotal_checks(&u, &e.irreps, Normalization::DropInverseSqrtD).unwrap();
        assert!(!rep.pass());
        assert_eq!(rep.snake_scalar, Some(e.group.order().to_string()));
    }
}

#[test]
fn super_evaluation_vanishes_on_the_odd_part() {
    for name in ["Z4", "Q8"] {
        for s in simples_of(name) {
            let rep = super_zigzag(&s.bundle).unwrap();
            assert!(rep.pass(), "{name} {}: {:?}", s.label, rep.checks);
        }
    }
}

#[test]
fn combine_on_sign_sign_is_identity() {
    let e = zoo().get("S3").unwrap();
    let irr = e.irreps.lift(e.conductor()).unwrap();
    let sign = irr.irreps[irr.index_of("sign").unwrap()].clone();
    assert!(combine_identity(&[sign.clone(), sign.clone()], &irr).unwrap().is_identity());
    let std = irr.irreps[irr.index_of("std").unwrap()].clone();
    assert!(combine_identity(&[std.clone(), sign], &irr).unwrap().is_identity());
    assert!(combine_identity(&[std.clone(), std], &irr).unwrap().is_identity());
}

#[test]
fn sliding_with_trivial_strand() {
    for name in ["S3", "Z4"] {
        let e = zoo().get(name).unwrap();
        let irr = e.irreps.lift(e.conductor()).unwrap();
        let triv = GModule::trivial(e.group.clone());
        let (l, m, r) = sliding_check(&triv, &[(e.group.identity(), Cyclo::one())], &irr).unwrap();
        let expect = Mat::identity(1).scale(&Cyclo::from_int(e.group.order() as i64));
        assert_eq!(l, expect);
        assert_eq!(m, expect);
        assert_eq!(r, expect);
    }
}

#[test]
fn sliding_with_sign_strand_and_class_sums() {
    let e = zoo().get("S3").unwrap();
    let irr = e.irreps.lift(e.conductor()).unwrap();
    let sign = &irr.irreps[irr.index_of("sign").unwrap()];
    for c in e.group.conjugacy_classes() {
        let dec: Vec<(usize, Cyclo)> = c.members.iter().map(|&h| (h, Cyclo::from_int(3))).collect();
        let (l, m, r) = sliding_check(sign, &dec, &irr).unwrap();
        assert_eq!(l, m);
        assert_eq!(m, r);
    }
}

#[test]
fn dual_basis_naturality_is_nontrivial() {
    for name in ["S3", "Z4"] {
        let e = zoo().get(name).unwrap();
        let irr = e.irreps.lift(e.conductor()).unwrap();
        for x in &irr.irreps {
            let w = x.direct_sum(x).unwrap();
            let hom = intertwiner_space(x, &w).unwrap();
            let f = hom[0].add(&hom[1].scale(&Cyclo::from_int(3)));
            let (lhs, rhs) = al_natural(x, &w, &[x.dual()], &f).unwrap();
            assert_eq!(lhs, rhs);
            assert!(lhs.iter().any(|c| !c.is_zero()));
        }
    }
}

#[test]
fn u_equivariance_at_a_three_cycle() {
    let s = simples_of("S3");
    let g = group("S3");
    let b = s.iter().find(|x| g.element_order(x.class_rep) == 3).unwrap();
    assert!(u_equivariance_check(&b.bundle, false).unwrap());
    // δ_x lands on the inverse class: the composite for x is proj(x⁻¹)
    let x = b.class_rep;
    let m = u_equivariance_composite(&b.bundle, x, false).unwrap().evaluate().unwrap();
    assert_eq!(m, b.bundle.proj(g.inv(x)));
    assert_ne!(m, b.bundle.proj(x));
}

#[test]
fn p_hat_is_the_projector_onto_the_identity_fiber() {
    for name in ["S3", "Z4", "Q8"] {
        let e = zoo().get(name).unwrap();
        let irr = e.irreps.lift(e.conductor()).unwrap();
        let s = simples_of(name);
        let mut r = rng(31);
        let v = random_bundle(&s, 3, &mut r);
        let a = p_hat_regular(&v).unwrap();
        assert_eq!(a.mul(&a), a);
        assert_eq!(a, p_hat_irreps(&v, &irr).unwrap());
        assert_eq!(a, v.proj(e.group.identity()));
    }
}

#[test]
fn composite_shape_errors_name_the_step() {
    let c = Composite::new("bad", vec![2]).then(Step::swap(0, 3, 2));
    match c.evaluate() {
        Err(Error::ShapeMismatch(msg)) => assert!(msg.contains("swap"), "{msg}"),
        other => panic!("expected a shape mismatch, got {other:?}"),
    }
}

#[test]
fn composite_evaluation_is_functorial() {
    let m = Mat::from_rows(vec![
        vec![Cyclo::from_int(1), Cyclo::from_int(2)],
        vec![Cyclo::from_int(0), Cyclo::from_int(1)],
    ]);
    let a = Composite::new("a", vec![2]).then(Step::on_wire("m", 0, &m));
    let b = Composite::new("b", vec![2]).then(Step::on_wire("m2", 0, &m.mul(&m)));
    let twice = a.clone().concat(&a);
    assert_eq!(twice.evaluate().unwrap(), b.evaluate().unwrap());
    let sw = Composite::new("s", vec![2, 3]).then(Step::swap(0, 2, 3)).then(Step::swap(0, 3, 2));
    assert!(sw.evaluate().unwrap().is_identity());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn q_projector_properties(name in prop::sample::select(vec!["Z2", "Z3", "V4", "S3", "D4"]), seed in any::<u64>()) {
        let s = simples_of(name);
        let mut r = rng(seed);
        let v = random_bundle(&s, 2, &mut r);
        let w = random_bundle(&s, 2, &mut r);
        let rep = q_report(&v, &w).unwrap();
        prop_assert!(rep.pass(), "{:?}", rep);
    }

    #[test]
    fn u_equivariance_random(name in prop::sample::select(vec!["Z4", "S3", "Q8"]), seed in any::<u64>()) {
        let s = simples_of(name);
        let mut r = rng(seed);
        let v = random_bundle(&s, 2, &mut r);
        prop_assert!(u_equivariance_check(&v, false).unwrap());
        if group(name).z().is_some() {
            prop_assert!(u_equivariance_check(&v, true).unwrap());
        }
    }
}
