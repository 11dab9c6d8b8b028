use drinfeld_core::group::AssocCheck;
use drinfeld_core::linalg::Mat;
use drinfeld_core::rep::{intertwiner_space, invariants_and_dual_basis, session_conductor, zoo_validate, GModule};
use drinfeld_core::zoo::Zoo;
use drinfeld_core::{group_from_table, Cyclo, Error, FiniteGroup};
use proptest::prelude::*;
use std::sync::Arc;

fn group(name: &str) -> Arc<FiniteGroup> {
    Zoo::builtin().get(name).unwrap().group.clone()
}

fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.members.len()).collect();
    v.sort();
    v
}

/// Cayley table of S3 built from permutation composition.
fn s3_from_permutations() -> Vec<Vec<usize>> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    perms.iter().map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect()
}

#[test]
fn s3_from_permutation_table() {
    let g = group_from_table(&s3_from_permutations()).unwrap();
    assert_eq!(g.order(), 6);
    assert_eq!(g.num_classes(), 3);
    assert_eq!(class_sizes(&g), vec![1, 2, 3]);
    assert_eq!(g.assoc_check(), AssocCheck::Exhaustive);
    assert!(!g.is_abelian());
}

#[test]
fn rejects_bad_tables() {
    assert!(matches!(group_from_table(&[vec![0, 1], vec![1]]), Err(Error::BadTable(_))));
    assert!(matches!(group_from_table(&[vec![0, 5], vec![1, 0]]), Err(Error::BadTable(_))));
    // constant table: no identity
    assert!(group_from_table(&[vec![0, 0], vec![0, 0]]).is_err());
    // a non-associative Latin square (order 5 loop that is not a group)
    let loop5 =
        vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    assert!(matches!(group_from_table(&loop5), Err(Error::NotAssociative(..))));
}

#[test]
fn z_must_be_central_of_order_two() {
    let s3 = group_from_table(&s3_from_permutations()).unwrap();
    for g in 1..6 {
        assert_eq!(s3.clone().with_z(g).unwrap_err(), Error::BadZ(g));
    }
    let q8 = group("Q8");
    let z = q8.z().unwrap();
    assert_eq!(q8.element_order(z), 2);
    assert!((0..8).all(|x| q8.commute(x, z)));
}

#[test]
fn class_sizes_of_shipped_groups() {
    assert_eq!(class_sizes(&group("S3")), vec![1, 2, 3]);
    assert_eq!(class_sizes(&group("Q8")), vec![1, 1, 2, 2, 2]);
    assert_eq!(class_sizes(&group("D4")), vec![1, 1, 2, 2, 2]);
    for name in ["Z2", "Z3", "Z4", "V4"] {
        let g = group(name);
        assert_eq!(g.num_classes(), g.order());
    }
}

#[test]
fn centralizers_in_s3() {
    let g = group("S3");
    for x in 0..6 {
        let c = g.centralizer(x);
        let expected = match g.element_order(x) {
            1 => 6,
            2 => 2,
            3 => 3,
            _ => unreachable!(),
        };
        assert_eq!(c.order(), expected);
        assert!(c.contains(x));
        assert!(c.elements.iter().all(|&y| g.commute(x, y)));
    }
}

#[test]
fn commuting_pairs_and_orbits() {
    let expect =
        [("Z2", 4, 4), ("Z3", 9, 9), ("Z4", 16, 16), ("V4", 16, 16), ("S3", 18, 8), ("D4", 40, 22), ("Q8", 40, 22)];
    for (name, pairs, orbits) in expect {
        let g = group(name);
        let om = g.commuting_pairs();
        assert_eq!(om.pairs.len(), pairs, "{name}");
        // Burnside: |Ω| = |G|·#classes
        assert_eq!(om.pairs.len(), g.order() * g.num_classes());
        let orb = g.diagonal_orbits(&om);
        assert_eq!(orb.len(), orbits, "{name}");
        assert_eq!(orb.iter().map(|o| o.members.len()).sum::<usize>(), om.pairs.len());
        for o in &orb {
            assert_eq!(o.members.len() * o.stabilizer.len(), g.order());
        }
    }
}

#[test]
fn session_conductors() {
    let zoo = Zoo::builtin();
    let expect = [("Z2", 8), ("Z3", 12), ("Z4", 16), ("V4", 16), ("S3", 24), ("D4", 32), ("Q8", 32)];
    for (name, m) in expect {
        let e = zoo.get(name).unwrap();
        assert_eq!(e.conductor(), m, "{name}");
        assert_eq!(session_conductor(&e.group, e.irreps.max_dim()), m);
    }
}

#[test]
fn intertwiner_dimensions() {
    let zoo = Zoo::builtin();
    let e = zoo.get("S3").unwrap();
    let g = e.group.clone();
    let reg = GModule::regular(g.clone());
    assert_eq!(intertwiner_space(&reg, &reg).unwrap().len(), 6);
    let triv = &e.irreps.irreps[0];
    let sign = &e.irreps.irreps[e.irreps.index_of("sign").unwrap()];
    assert!(intertwiner_space(triv, sign).unwrap().is_empty());
    assert_eq!(intertwiner_space(sign, sign).unwrap().len(), 1);
    // every intertwiner really intertwines
    let std = &e.irreps.irreps[e.irreps.index_of("std").unwrap()];
    let w = std.direct_sum(std).unwrap();
    for f in intertwiner_space(std, &w).unwrap() {
        for x in 0..6 {
            assert_eq!(f.mul(&std.rho[x]), w.rho[x].mul(&f));
        }
    }
}

#[test]
fn shipped_zoo_validates() {
    let zoo = Zoo::builtin();
    zoo.validate().unwrap();
    for name in zoo.names() {
        let e = zoo.get(&name).unwrap();
        let r = zoo_validate(&e.irreps);
        assert!(r.pass, "{name}: {:?}", r.failures);
        assert_eq!(r.sum_of_squares, e.group.order());
    }
    assert_eq!(zoo.get("S3").unwrap().irreps.dims(), vec![1, 1, 2]);
    assert_eq!(zoo.get("Z4").unwrap().irreps.dims(), vec![1, 1, 1, 1]);
}

#[test]
fn broken_irrep_is_reported() {
    let zoo = Zoo::builtin();
    let mut irr = zoo.get("S3").unwrap().irreps.clone();
    // duplicate the sign representation in place of the trivial one
    irr.irreps[0] = irr.irreps[1].clone();
    let r = zoo_validate(&irr);
    assert!(!r.pass);
    assert!(!r.failures.is_empty());
}

#[test]
fn dual_basis_pairing_is_identity() {
    let zoo = Zoo::builtin();
    for name in ["S3", "Q8", "Z4"] {
        let e = zoo.get(name).unwrap();
        let irr = e.irreps.lift(e.conductor()).unwrap();
        for x in &irr.irreps {
            let db = invariants_and_dual_basis(&[x.clone(), x.dual()]).unwrap();
            assert_eq!(db.basis.len(), 1);
            assert!(db.pairing().is_identity(), "{name}");
        }
        let sign = irr.irreps.last().unwrap();
        let db = invariants_and_dual_basis(&[sign.clone(), sign.clone(), sign.dual(), sign.dual()]).unwrap();
        assert!(db.pairing().is_identity());
    }
}

#[test]
fn tensor_dual_and_characters() {
    let zoo = Zoo::builtin();
    let e = zoo.get("S3").unwrap();
    let std = &e.irreps.irreps[2];
    let t = std.tensor(std).unwrap();
    assert_eq!(t.dim, 4);
    // std⊗std = triv + sign + std
    let dims: Vec<usize> = e.irreps.irreps.iter().map(|x| intertwiner_space(x, &t).unwrap().len()).collect();
    assert_eq!(dims, vec![1, 1, 1]);
    let chi = std.dual().character_values();
    assert_eq!(chi, std.character_values().iter().map(|c| c.conjugate()).collect::<Vec<_>>());
}

fn small_mat() -> impl Strategy<Value = Mat> {
    prop::collection::vec(-3i64..=3, 9)
        .prop_map(|v| Mat::from_rows(v.chunks(3).map(|r| r.iter().map(|&x| Cyclo::from_int(x)).collect()).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn inverse_is_two_sided(m in small_mat()) {
        match m.inverse() {
            Some(inv) => {
                prop_assert!(inv.mul(&m).is_identity());
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert_eq!(m.rank(), 3);
            }
            None => prop_assert!(m.rank() < 3),
        }
    }

    #[test]
    fn rank_nullity(m in small_mat()) {
        prop_assert_eq!(m.rank() + drinfeld_core::linalg::kernel(&m).len(), 3);
    }

    #[test]
    fn conjugation_preserves_classes(x in 0usize..8, y in 0usize..8) {
        let g = group("Q8");
        let c = g.conj(y, x);
        prop_assert_eq!(g.class_index(c), g.class_index(x));
        prop_assert_eq!(g.element_order(c), g.element_order(x));
    }
}
