use drinfeld_core::scalar::{q, Q};
use drinfeld_core::scalar::{sqrt_conductor, sqrt_int, sqrt_ratio};
use drinfeld_core::{Cyclo, Error};
use proptest::prelude::*;

const CONDUCTORS: [u32; 8] = [1, 3, 4, 5, 8, 12, 20, 24];

fn arb_cyclo(m: u32) -> impl Strategy<Value = Cyclo> {
    let len = m.max(1) as usize;
    prop::collection::vec((-5i64..=5, 1i64..=4), len).prop_map(move |cs| {
        cs.iter()
            .enumerate()
            .fold(Cyclo::zero(), |acc, (k, &(n, d))| acc + Cyclo::zeta_pow(m, k as i64).scale(&q(n, d)))
    })
}

fn arb_triple() -> impl Strategy<Value = (Cyclo, Cyclo, Cyclo)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|m| (arb_cyclo(m), arb_cyclo(m), arb_cyclo(m)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1200, rng_algorithm: prop::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms((a, b, c) in arb_triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Cyclo::zero(), a.clone());
        prop_assert_eq!(&a * &Cyclo::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        } else {
            prop_assert_eq!(a.try_inv(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn conjugation_is_a_field_automorphism((a, b, _c) in arb_triple()) {
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
    }

    #[test]
    fn lifting_preserves_arithmetic((a, b, _c) in arb_triple()) {
        let m = [a.conductor(), b.conductor()].into_iter().fold(1u32, num_lcm) ;
        let big = num_lcm(m, 24);
        let (la, lb) = (a.conductor_lift(big).unwrap(), b.conductor_lift(big).unwrap());
        prop_assert_eq!(&la, &a);
        prop_assert_eq!(&la * &lb, &a * &b);
    }

    #[test]
    fn serde_round_trip((a, _b, _c) in arb_triple()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: Cyclo = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}

fn num_lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[test]
fn zeta8_plus_inverse_squares_to_two() {
    let z = Cyclo::zeta(8);
    let s = &z + &z.inv();
    assert_eq!(&s * &s, Cyclo::from_int(2));
    assert_eq!(sqrt_int(2, 8).unwrap(), s);
}

#[test]
fn sqrt_int_squares_back_for_n_up_to_50() {
    for n in 1..=50u64 {
        let m = 4 * n as u32;
        let r = sqrt_int(n, m).unwrap();
        assert_eq!(&r * &r, Cyclo::from_int(n as i64), "n = {n}");
        assert!(r.is_positive_real(), "n = {n}");
        let rmin = sqrt_int(n, sqrt_conductor(n)).unwrap();
        assert_eq!(&rmin * &rmin, Cyclo::from_int(n as i64));
    }
}

#[test]
fn sqrt_int_multiplicative_on_coprime_square_free_parts() {
    let square_free = [1u64, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15];
    for &a in &square_free {
        for &b in &square_free {
            if num_gcd(a, b) != 1 {
                continue;
            }
            let m = num_lcm(num_lcm(sqrt_conductor(a), sqrt_conductor(b)), 4);
            let lhs = &sqrt_int(a, m).unwrap() * &sqrt_int(b, m).unwrap();
            assert_eq!(lhs, sqrt_int(a * b, m).unwrap(), "√{a}·√{b}");
        }
    }
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn sqrt6_at_conductor_24() {
    let r = sqrt_int(6, 24).unwrap();
    assert_eq!(&r * &r, Cyclo::from_int(6));
    assert!((r.to_f64() - 6f64.sqrt()).abs() < 1e-12);
}

#[test]
fn sqrt_rejects_too_small_conductor() {
    assert_eq!(sqrt_int(3, 4), Err(Error::ConductorTooSmall { n: 3, m: 4, required: 12 }));
    assert!(sqrt_int(2, 4).is_err());
    assert!(sqrt_int(4, 1).is_ok());
}

#[test]
fn real_square_roots_are_self_conjugate() {
    let r = sqrt_int(5, 20).unwrap();
    assert_eq!(r.conjugate(), r);
    let s = sqrt_ratio(2, 6, 24).unwrap();
    assert_eq!(&s * &s, Cyclo::rational(q(1, 3)));
}

#[test]
fn golden_ratio_in_q_zeta5() {
    let z = Cyclo::zeta(5);
    let phi = -(&z.pow(2) + &z.pow(3));
    assert_eq!(&phi * &phi, &phi + &Cyclo::one());
    assert!((phi.to_f64() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    let inv = phi.inv();
    assert_eq!(&inv, &(&phi - &Cyclo::one()));
}

#[test]
fn conductor_mismatch_is_reported() {
    let a = Cyclo::zeta(3);
    let b = Cyclo::zeta(4);
    assert_eq!(a.try_add(&b), Err(Error::ConductorMismatch(3, 4)));
    assert!(a.try_mul(&Cyclo::from_int(2)).is_ok());
}

#[test]
fn roots_of_unity_have_the_right_order() {
    for m in [3u32, 4, 5, 8, 12, 24] {
        let z = Cyclo::zeta(m);
        assert!(z.pow(m).is_one());
        for k in 1..m {
            if m % k == 0 {
                assert!(!z.pow(k).is_one());
            }
        }
        let s = (0..m).fold(Cyclo::zero(), |acc, k| acc + z.pow(k));
        assert!(s.is_zero(), "Σ ζ^k ≠ 0 for m = {m}");
    }
}

#[test]
fn rationals_stay_rational() {
    let a = Cyclo::rational(Q::new(3.into(), 7.into()));
    assert!(a.is_rational());
    assert_eq!(a.conductor(), 1);
    assert_eq!((&a * &a.inv()), Cyclo::one());
}
