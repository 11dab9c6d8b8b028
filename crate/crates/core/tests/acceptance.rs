//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact (zero tolerance); every random input comes from a fixed seed.

use drinfeld_core::algebra::*;
use drinfeld_core::bundle::*;
use drinfeld_core::matvec::{self, FusionLabelSet, MatVecObject};
use drinfeld_core::oracle::*;
use drinfeld_core::random::{random_bundle, rng};
use drinfeld_core::rep::intertwiner_space;
use drinfeld_core::scalar::{q, sqrt_conductor, sqrt_int};
use drinfeld_core::zoo::Zoo;
use drinfeld_core::Cyclo;
use rand::Rng;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

/// Exact arithmetic throughout: no tolerance is ever applied.
const TOLERANCE: &str = "exact (0)";
const SEED: u64 = 20_240_607;
const Q_TRIALS: usize = 20;
const SUPER_TRIALS: usize = 20;
const LAMBDA_TRIALS: usize = 20;
const FIELD_TRIPLES: usize = 1000;
const TIME_BUDGET: Duration = Duration::from_secs(60);
const GROUPS: [&str; 7] = ["Z2", "Z3", "Z4", "V4", "S3", "D4", "Q8"];
const SUPERGROUPS: [&str; 2] = ["Z4", "Q8"];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q_projector_equivalence(zoo: &Zoo) -> Outcome {
    let mut n = 0;
    for name in GROUPS {
        let s = zoo.simples(name).map_err(|e| e.to_string())?;
        let mut r = rng(SEED);
        for t in 0..Q_TRIALS {
            let v = random_bundle(&s, 2, &mut r);
            let w = random_bundle(&s, 2, &mut r);
            let rep = q_report(&v, &w).map_err(|e| e.to_string())?;
            let expect = reduced_tensor(&v, &w).map_err(|e| e.to_string())?.fiber_dims();
            ensure(rep.pass() && rep.image_graded_dims == expect, || format!("{name} trial {t}: {rep:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} seeded pairs over {} groups", GROUPS.len()))
}

fn super_q_projector(zoo: &Zoo) -> Outcome {
    let mut n = 0;
    for name in SUPERGROUPS {
        let s = zoo.simples(name).map_err(|e| e.to_string())?;
        let g = &zoo.get(name).unwrap().group;
        let z = g.z().unwrap();
        let mut r = rng(SEED ^ 1);
        for t in 0..SUPER_TRIALS {
            let v = random_bundle(&s, 2, &mut r);
            let w = random_bundle(&s, 2, &mut r);
            let rep = q_report_super(&v, &w).map_err(|e| e.to_string())?;
            // grading bookkeeping: v∈V^σ_a, w∈W^τ_b pair iff b = a·z^{σ+τ}, landing at a·z^τ
            let (va, wa) = (v.parity_adapted().unwrap(), w.parity_adapted().unwrap());
            let (pv, pw) = (va.parity.as_ref().unwrap(), wa.parity.as_ref().unwrap());
            let mut expect = vec![0usize; g.order()];
            for a in 0..va.dim() {
                for b in 0..wa.dim() {
                    let zs = |k: u8| if k.is_multiple_of(2) { g.identity() } else { z };
                    if wa.grade[b] == g.mul(va.grade[a], zs(pv[a] + pw[b])) {
                        expect[g.mul(va.grade[a], zs(pw[b]))] += 1;
                    }
                }
            }
            ensure(rep.pass() && rep.image_graded_dims == expect, || format!("{name} trial {t}: {rep:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} seeded pairs over Z4, Q8"))
}

fn pivotal_suite(zoo: &Zoo) -> Outcome {
    let mut n = 0;
    for name in GROUPS {
        let e = zoo.get(name).unwrap();
        let mut objects = vec![EquivariantBundle::unit_reduced(e.group.clone())];
        objects.extend(zoo.simples(name).unwrap().into_iter().map(|s| s.bundle));
        for v in &objects {
            let rep = pivotal_checks(v, &e.irreps, Normalization::Correct).map_err(|e| e.to_string())?;
            ensure(rep.pass(), || format!("{name}: {:?}", rep.checks))?;
            if name == "S3" {
                ensure(rep.conductor == 24, || format!("S3 conductor {}", rep.conductor))?;
            }
            n += rep.checks.len();
        }
        if e.group.z().is_some() {
            for v in &objects {
                let rep = super_zigzag(v).map_err(|e| e.to_string())?;
                ensure(rep.pass(), || format!("{name} super: {:?}", rep.checks))?;
                n += rep.checks.len();
            }
        }
    }
    Ok(format!("{n} identities (S3 at conductor 24)"))
}

fn coproduct_suite(zoo: &Zoo) -> Outcome {
    let mut isos = 0;
    for name in GROUPS {
        let g = zoo.get(name).unwrap().group.clone();
        let d = drinfeld_double(&g);
        let dd = TensorSquare { base: &d };
        let dbar = coproduct_bar(&g);
        ensure(dbar.check_multiplicative(&d, &dd).is_none(), || format!("{name}: Δ̄ not multiplicative"))?;
        let s = zoo.simples(name).unwrap();
        let mut r = rng(SEED ^ 2);
        let v = random_bundle(&s, 2, &mut r);
        let w = random_bundle(&s, 2, &mut r);
        let cm = coproduct_module(&dbar, &v, &w).map_err(|e| e.to_string())?;
        let red = reduced_tensor(&v, &w).unwrap();
        let f = find_isomorphism(&cm, &red).unwrap().ok_or(format!("{name}: Δ̄(1)·(V⊗W) ≇ V⊗̄W"))?;
        ensure(is_bundle_map(&cm, &red, &f) && f.inverse().is_some(), || format!("{name}: bad iso"))?;
        isos += 1;
        if g.z().is_some() {
            let dz = coproduct_bar_z(&g).unwrap();
            ensure(dz.check_multiplicative(&d, &dd).is_none(), || format!("{name}: Δ̄_z not multiplicative"))?;
            let cmz = coproduct_module(&dz, &v, &w).map_err(|e| e.to_string())?;
            let rz = reduced_tensor_z(&v, &w).unwrap();
            let f = find_isomorphism(&cmz, &rz).unwrap().ok_or(format!("{name}: Δ̄_z(1)·(V⊗W) ≇ V⊗_zW"))?;
            ensure(is_bundle_map(&cmz, &rz, &f), || format!("{name}: bad z-iso"))?;
            isos += 1;
            let lam = lambda_automorphism(&g).unwrap();
            ensure(lam.check_multiplicative(&d, &d).is_none(), || format!("{name}: λ not multiplicative"))?;
            ensure(lam.compose(&lam).is_identity(), || format!("{name}: λ not invertible"))?;
            let lhs = lam.tensor_square().compose(&dbar);
            let rhs = dz.compose(&lam);
            ensure(lhs.images == rhs.images, || format!("{name}: (λ⊗λ)∘Δ̄ ≠ Δ̄_z∘λ"))?;
        }
    }
    Ok(format!("all basis pairs, {isos} explicit isomorphisms"))
}

fn lambda_equivalence(zoo: &Zoo) -> Outcome {
    let mut n = 0;
    for name in SUPERGROUPS {
        let s = zoo.simples(name).unwrap();
        let mut r = rng(SEED ^ 3);
        for t in 0..LAMBDA_TRIALS {
            let v = random_bundle(&s, 2, &mut r);
            let w = random_bundle(&s, 2, &mut r);
            let lhs = lambda_pullback(&reduced_tensor_z(&v, &w).unwrap()).unwrap();
            let rhs = reduced_tensor(&lambda_pullback(&v).unwrap(), &lambda_pullback(&w).unwrap()).unwrap();
            // identity underlying map: same grading and same action matrices
            ensure(lhs.grade == rhs.grade && lhs.action == rhs.action, || format!("{name} trial {t}"))?;
            n += 1;
        }
    }
    // z = e: Λ is the identity functor
    let s3 = zoo.get("S3").unwrap().group.clone();
    let gz = Arc::new((*s3).clone().with_z(s3.identity()).unwrap());
    for sim in zoo.simples("S3").unwrap() {
        let b = EquivariantBundle::new(gz.clone(), sim.bundle.grade.clone(), sim.bundle.action.clone()).unwrap();
        let l = lambda_pullback(&b).unwrap();
        ensure(l.grade == b.grade && l.action == b.action, || format!("Λ ≠ id on {}", sim.label))?;
    }
    Ok(format!("{n} seeded pairs; Λ = id for z = e"))
}

fn torus_theorem(zoo: &Zoo) -> Outcome {
    let mut parts = Vec::new();
    for name in GROUPS {
        let t = torus_center_check(&zoo.get(name).unwrap().group);
        ensure(t.lhs == t.rhs && t.rhs == t.orbit_count, || format!("{name}: {t:?}"))?;
        parts.push(format!("{name} {}", t.lhs));
    }
    let s3 = torus_center_check(&zoo.get("S3").unwrap().group).lhs;
    let z2 = torus_center_check(&zoo.get("Z2").unwrap().group).lhs;
    ensure(s3 == 21 && z2 == 8, || format!("S3 {s3}, Z2 {z2}"))?;
    Ok(parts.join(", "))
}

fn matvec_suite() -> Outcome {
    for set in [FusionLabelSet::fibonacci(), FusionLabelSet::ising(), FusionLabelSet::rep_s3()] {
        let n = set.len();
        let err = |e: drinfeld_core::Error| e.to_string();
        for i in 0..n {
            for j in 0..n {
                let x = MatVecObject::simple(n, i, j);
                for k in 0..n {
                    for l in 0..n {
                        let p = matvec::red_product(&x, &MatVecObject::simple(n, k, l)).map_err(err)?;
                        let expect = if j == k { MatVecObject::simple(n, i, l) } else { MatVecObject::zero(n) };
                        ensure(p == expect, || format!("{}: X_{i}^{j}·X_{k}^{l}", set.name))?;
                    }
                }
                let ld = matvec::left_dim(&x, &set).map_err(err)?;
                let rd = matvec::right_dim(&x, &set).map_err(err)?;
                ensure(ld == &set.dims[j] / &set.dims[i] && rd == &set.dims[i] / &set.dims[j], || {
                    format!("{}: dims of X_{i}^{j}", set.name)
                })?;
                let u = matvec::um_action(&x, &set).map_err(err)?;
                ensure(matvec::um_action(&u, &set).map_err(err)? == x, || format!("{}: U_M² ≠ id", set.name))?;
                for k in 0..n {
                    for l in 0..n {
                        let y = MatVecObject::simple(n, k, l);
                        let lhs = matvec::um_action(&matvec::red_product(&x, &y).map_err(err)?, &set).map_err(err)?;
                        let rhs = matvec::red_product(&matvec::um_action(&y, &set).map_err(err)?, &u).map_err(err)?;
                        ensure(lhs == rhs, || format!("{}: U_M does not reverse products", set.name))?;
                    }
                }
            }
        }
        // asymmetry: X_0^1 ⊗̄ X_1^1 ≠ 0 while X_1^1 ⊗̄ X_0^1 = 0
        let (a, b) = (MatVecObject::simple(n, 0, 1), MatVecObject::simple(n, 1, 1));
        ensure(
            !matvec::red_product(&a, &b).unwrap().is_zero() && matvec::red_product(&b, &a).unwrap().is_zero(),
            || format!("{}: asymmetry pair", set.name),
        )?;
    }
    Ok("fibonacci, ising, rep_s3".into())
}

fn calculus_suite(zoo: &Zoo) -> Outcome {
    let mut n = 0;
    for name in ["S3", "Z4"] {
        let e = zoo.get(name).unwrap();
        let irr = e.irreps.lift(e.conductor()).unwrap();
        for x in &irr.irreps {
            for y in &irr.irreps {
                let c = combine_identity(&[x.clone(), y.clone()], &irr).map_err(|e| e.to_string())?;
                ensure(c.is_identity(), || format!("{name}: combine"))?;
                n += 1;
            }
            for cls in e.group.conjugacy_classes() {
                let dec: Vec<(usize, Cyclo)> = cls.members.iter().map(|&h| (h, Cyclo::one())).collect();
                let (l, m, r) = sliding_check(x, &dec, &irr).map_err(|e| e.to_string())?;
                ensure(l == m && m == r, || format!("{name}: sliding"))?;
                n += 1;
            }
            let w = x.direct_sum(x).unwrap();
            let hom = intertwiner_space(x, &w).unwrap();
            let f = hom[0].add(&hom[1].scale(&Cyclo::from_int(3)));
            let (lhs, rhs) = al_natural(x, &w, &[x.dual()], &f).map_err(|e| e.to_string())?;
            ensure(lhs == rhs && lhs.iter().any(|c| !c.is_zero()), || format!("{name}: naturality"))?;
            n += 1;
        }
    }
    Ok(format!("{n} matrix identities over S3, Z4"))
}

fn simple_counts(zoo: &Zoo) -> Outcome {
    let mut parts = Vec::new();
    for name in GROUPS {
        let g = &zoo.get(name).unwrap().group;
        let s = zoo.simples(name).map_err(|e| e.to_string())?;
        let c = center_dimension(&drinfeld_double(g));
        ensure(s.len() == c, || format!("{name}: {} simples vs center {c}", s.len()))?;
        for (i, a) in s.iter().enumerate() {
            for (j, b) in s.iter().enumerate() {
                let d = bundle_hom_space(&a.bundle, &b.bundle).map_err(|e| e.to_string())?.len();
                ensure(d == usize::from(i == j), || format!("{name}: Hom({}, {}) = {d}", a.label, b.label))?;
            }
        }
        parts.push(format!("{name} {c}"));
    }
    ensure(zoo.simples("S3").unwrap().len() == 8, || "S3 ≠ 8".into())?;
    Ok(parts.join(", "))
}

fn exact_scalar() -> Outcome {
    let mut r = rng(SEED ^ 4);
    let conductors = [1u32, 3, 4, 5, 8, 12, 24];
    let rand_cyclo = |m: u32, r: &mut rand_chacha::ChaCha8Rng| {
        (0..m.max(1)).fold(Cyclo::zero(), |acc, k| {
            acc + Cyclo::zeta_pow(m, k as i64).scale(&q(r.gen_range(-4..=4), r.gen_range(1..=3)))
        })
    };
    for t in 0..FIELD_TRIPLES {
        let m = conductors[r.gen_range(0..conductors.len())];
        let (a, b, c) = (rand_cyclo(m, &mut r), rand_cyclo(m, &mut r), rand_cyclo(m, &mut r));
        let ok = &a + &b == &b + &a
            && &a * &b == &b * &a
            && &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && (a.is_zero() || (&a * &a.inv()).is_one());
        ensure(ok, || format!("triple {t} at conductor {m}"))?;
    }
    for n in 1..=50u64 {
        let s = sqrt_int(n, sqrt_conductor(n)).map_err(|e| e.to_string())?;
        ensure(&s * &s == Cyclo::from_int(n as i64), || format!("√{n}² ≠ {n}"))?;
    }
    let sf = [2u64, 3, 5, 7, 11, 13];
    for (i, &a) in sf.iter().enumerate() {
        for &b in &sf[i + 1..] {
            let m = 4 * (a * b) as u32;
            let lhs = &sqrt_int(a, m).unwrap() * &sqrt_int(b, m).unwrap();
            ensure(lhs == sqrt_int(a * b, m).unwrap(), || format!("√{a}·√{b} ≠ √{}", a * b))?;
        }
    }
    Ok(format!("{FIELD_TRIPLES} seeded triples, √n for n ≤ 50, multiplicativity"))
}

fn main() -> ExitCode {
    let zoo = Zoo::builtin();
    let criteria: Vec<Criterion> = vec![
        ("Q-projector equivalence", Box::new(|| q_projector_equivalence(&zoo))),
        ("super Q-projector", Box::new(|| super_q_projector(&zoo))),
        ("pivotal suite", Box::new(|| pivotal_suite(&zoo))),
        ("coproduct suite", Box::new(|| coproduct_suite(&zoo))),
        ("Λ equivalence", Box::new(|| lambda_equivalence(&zoo))),
        ("torus center counts", Box::new(|| torus_theorem(&zoo))),
        ("MatVec suite", Box::new(matvec_suite)),
        ("dual-basis calculus", Box::new(|| calculus_suite(&zoo))),
        ("simple counts", Box::new(|| simple_counts(&zoo))),
        ("exact scalars", Box::new(exact_scalar)),
    ];
    println!("acceptance: tolerance {TOLERANCE}, seed {SEED}");
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let dt = start.elapsed();
        let out = match out {
            Ok(msg) if dt > TIME_BUDGET => Err(format!("{msg}; exceeded {TIME_BUDGET:?}")),
            o => o,
        };
        match out {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{:.2}s]", i + 1, dt.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{:.2}s]", i + 1, dt.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
