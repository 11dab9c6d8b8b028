use drinfeld_core::algebra::*;
use drinfeld_core::zoo::Zoo;
use drinfeld_core::FiniteGroup;
use std::sync::Arc;

fn group(name: &str) -> Arc<FiniteGroup> {
    Zoo::builtin().get(name).unwrap().group.clone()
}

#[test]
fn double_of_s3() {
    let g = group("S3");
    let d = drinfeld_double(&g);
    assert_eq!(d.dim(), 36);
    assert!(d.check_unit());
    assert_eq!(d.check_associativity(usize::MAX, 0), None);
    assert_eq!(center_dimension(&d), 8);
    assert_eq!(center_dimension(&group_algebra(&g)), 3);
}

#[test]
fn center_dimensions_of_doubles() {
    // Σ over classes of #classes(Z(g)) = number of simple D(G)-modules
    let expect = [("Z2", 4), ("Z3", 9), ("Z4", 16), ("V4", 16), ("S3", 8), ("D4", 22), ("Q8", 22)];
    for (name, k) in expect {
        let g = group(name);
        assert_eq!(center_dimension(&drinfeld_double(&g)), k, "{name}");
        let sum: usize =
            g.conjugacy_classes().iter().map(|c| g.centralizer(c.representative).group.num_classes()).sum();
        assert_eq!(sum, k);
    }
}

#[test]
fn literal_elliptic_product_is_not_associative() {
    // Regression: the conjugation placed on the second factor gives a
    // non-associative product for non-abelian G.
    let g = group("S3");
    assert!(elliptic_double_literal(&g).check_associativity(usize::MAX, 0).is_some());
    let el = elliptic_double(&g);
    assert_eq!(el.dim(), 216);
    assert!(el.check_unit());
    assert_eq!(el.check_associativity(0, 20_000), None);
    // for abelian groups the two coincide
    let z4 = group("Z4");
    assert_eq!(elliptic_double_literal(&z4).check_associativity(usize::MAX, 0), None);
}

#[test]
fn torus_subalgebra_dimension() {
    let g = group("S3");
    let t = torus_subalgebra(&g);
    assert_eq!(t.dim(), 6 * 18);
    assert!(t.check_unit());
    assert!(el_is_central_idempotent(&g));
}

fn el_is_central_idempotent(g: &FiniteGroup) -> bool {
    let el = elliptic_double(g);
    let d = delta_omega(g);
    el.is_central(&d) && el.mul(&d, &d) == d
}

#[test]
fn torus_counts() {
    let expect = [("Z2", 8), ("Z3", 27), ("Z4", 64), ("V4", 64), ("S3", 21), ("D4", 92), ("Q8", 92)];
    for (name, k) in expect {
        let t = torus_center_check(&group(name));
        assert!(t.equal, "{name}: {t:?}");
        assert_eq!(t.lhs, k, "{name}");
    }
    // S3: 8 (identity class) + 4 (D(Z2)) + 9 (D(Z3))
    let g = group("S3");
    let parts: Vec<usize> = g
        .conjugacy_classes()
        .iter()
        .map(|c| center_dimension(&drinfeld_double(&g.centralizer(c.representative).group)))
        .collect();
    let mut sorted = parts.clone();
    sorted.sort();
    assert_eq!(sorted, vec![4, 8, 9]);
}

#[test]
fn r_matrix_has_n_squared_terms() {
    let g = group("S3");
    assert_eq!(r_matrix(&g).len(), 6);
}

#[test]
fn reduced_coproducts_are_multiplicative() {
    for name in ["Z2", "Z4", "S3", "Q8"] {
        let g = group(name);
        let d = drinfeld_double(&g);
        let dd = TensorSquare { base: &d };
        assert_eq!(coproduct_bar(&g).check_multiplicative(&d, &dd), None, "{name}");
        if g.z().is_some() {
            assert_eq!(coproduct_bar_z(&g).unwrap().check_multiplicative(&d, &dd), None, "{name}");
        }
    }
    assert!(coproduct_bar_z(&group("S3")).is_err());
}

#[test]
fn lambda_is_an_involutive_automorphism_intertwining_coproducts() {
    for name in ["Z4", "Q8"] {
        let g = group(name);
        let d = drinfeld_double(&g);
        let lam = lambda_automorphism(&g).unwrap();
        assert_eq!(lam.check_multiplicative(&d, &d), None);
        assert!(lam.compose(&lam).is_identity(), "{name}");
        let lhs = lam.tensor_square().compose(&coproduct_bar(&g));
        let rhs = coproduct_bar_z(&g).unwrap().compose(&lam);
        assert_eq!(lhs.images, rhs.images, "{name}");
    }
}

#[test]
fn trivial_z_collapses_to_the_untwisted_structures() {
    let g = (*group("S3")).clone();
    assert!(lambda_automorphism(&g).is_err());
    let e = g.identity();
    let g = g.with_z(e).unwrap();
    assert!(lambda_automorphism(&g).unwrap().is_identity());
    assert_eq!(coproduct_bar_z(&g).unwrap().images, coproduct_bar(&g).images);
}

#[test]
fn every_shipped_double_is_associative_and_unital() {
    for name in ["Z2", "Z3", "Z4", "V4", "S3", "D4", "Q8"] {
        let g = group(name);
        for a in [drinfeld_double(&g), torus_subalgebra(&g), group_algebra(&g)] {
            assert!(a.check_unit(), "{name}");
            assert_eq!(a.check_associativity(usize::MAX, 0), None, "{name}");
        }
    }
}
