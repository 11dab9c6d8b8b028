use crate::report::{Check, Report};
use crate::{ProductArg, Suite};
use drinfeld_core::algebra::{center_dimension, drinfeld_double, torus_center_check};
use drinfeld_core::bundle::{self, EquivariantBundle, Product};
use drinfeld_core::matvec::{self, FusionLabelSet, MatVecObject};
use drinfeld_core::oracle::{self, Normalization};
use drinfeld_core::random::{random_bundle, rng};
use drinfeld_core::rep::intertwiner_space;
use drinfeld_core::zoo::Zoo;
use drinfeld_core::Cyclo;
use serde_json::{json, Value};

type Res = Result<Report, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn group_info(zoo: &Zoo, zoo_text: &str, name: &str) -> Res {
    let e = zoo.get(name).map_err(err)?;
    let g = &e.group;
    let pairs = g.commuting_pairs();
    let orbits = g.diagonal_orbits(&pairs);
    let classes: Vec<Value> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let cref = e.centralizers.iter().find(|r| g.class_index(r.element) == g.class_index(c.representative));
            json!({
                "representative": c.representative,
                "size": c.members.len(),
                "members": c.members,
                "element_order": g.element_order(c.representative),
                "centralizer_order": g.centralizer_elements(c.representative).len(),
                "centralizer_zoo_group": cref.map(|r| r.group.clone()),
            })
        })
        .collect();
    let dg = drinfeld_double(g);
    let center = center_dimension(&dg);
    let simples = zoo.simples(name).map_err(err)?;
    let results = json!({
        "order": g.order(),
        "z": g.z(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "conductor": e.conductor(),
        "classes": classes,
        "num_classes": g.num_classes(),
        "commuting_pairs": pairs.pairs.len(),
        "diagonal_orbits": orbits.len(),
        "double": {"dim": g.order() * g.order(), "center_dim": center, "simples": simples.len()},
        "irreps": e.irreps.labels.iter().zip(e.irreps.dims()).map(|(l, d)| json!({"label": l, "dim": d})).collect::<Vec<_>>(),
    });
    let mut table = vec![vec!["class rep".into(), "size".into(), "|Z(g)|".into(), "Z(g) ≅".into()]];
    for c in g.conjugacy_classes() {
        let cref = e.centralizers.iter().find(|r| g.class_index(r.element) == g.class_index(c.representative));
        table.push(vec![
            c.representative.to_string(),
            c.members.len().to_string(),
            g.centralizer_elements(c.representative).len().to_string(),
            cref.map_or("?".into(), |r| r.group.clone()),
        ]);
    }
    table.push(vec![]);
    table.push(vec!["classes".into(), g.num_classes().to_string()]);
    table.push(vec!["|Ω|".into(), pairs.pairs.len().to_string()]);
    table.push(vec!["diagonal orbits".into(), orbits.len().to_string()]);
    table.push(vec!["dim D(G)".into(), (g.order() * g.order()).to_string()]);
    table.push(vec!["center dim D(G)".into(), center.to_string()]);
    let checks = vec![
        Check::new("simples from bundles = center dimension of D(G)", simples.len() == center),
        Check::new("orbits on Ω = simples of D(G)", orbits.len() == center),
    ];
    Ok(Report::new("group-info", json!({"group": name}), &[zoo_text], results, checks).with_table(table))
}

fn product_kind(p: ProductArg) -> Product {
    match p {
        ProductArg::Conv => Product::Convolution,
        ProductArg::Red => Product::Reduced,
        ProductArg::Redz => Product::ReducedZ,
    }
}

pub fn fusion(zoo: &Zoo, zoo_text: &str, name: &str, p: ProductArg) -> Res {
    let e = zoo.get(name).map_err(err)?;
    let kind = product_kind(p);
    if kind == Product::ReducedZ && e.group.z().is_none() {
        return Err(format!("{name} has no central element z; the z-twisted product needs one"));
    }
    let simples = zoo.simples(name).map_err(err)?;
    let t = bundle::fusion_table(&simples, kind).map_err(err)?;
    let k = simples.len();
    let dims: Vec<usize> = simples.iter().map(|s| s.bundle.dim()).collect();
    let mut checks = Vec::new();
    // dimension consistency
    let mut dim_ok = true;
    let mut witness = String::new();
    for a in 0..k {
        for b in 0..k {
            let prod = bundle::product(kind, &simples[a].bundle, &simples[b].bundle).map_err(err)?;
            let lhs: usize = (0..k).map(|c| t.n[a][b][c] * dims[c]).sum();
            if lhs != prod.dim() {
                dim_ok = false;
                witness = format!("({a},{b}): Σ N d = {lhs}, dim = {}", prod.dim());
            }
        }
    }
    checks.push(Check::with_witness("Σ_c N_ab^c dim c = dim(a ⊛ b)", dim_ok, || witness.clone()));
    match kind {
        Product::Convolution => {
            let duals = dual_indices(&simples).map_err(err)?;
            let ok = (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| t.n[a][b][c] == t.n[c][duals[b]][a])));
            checks.push(Check::new("Frobenius reciprocity N_ab^c = N_{c b*}^a", ok));
            let unit = (0..k)
                .find(|&u| simples[u].bundle == EquivariantBundle::unit_convolution(e.group.clone()))
                .or_else(|| {
                    (0..k).find(|&u| {
                        simples[u].bundle.dim() == 1
                            && simples[u].class_rep == e.group.identity()
                            && simples[u].irrep == 0
                    })
                });
            let ok = unit.is_some_and(|u| (0..k).all(|b| (0..k).all(|c| t.n[u][b][c] == usize::from(b == c))));
            checks.push(Check::new("unit k_e is a two-sided unit", ok));
        }
        Product::Reduced | Product::ReducedZ => {
            let ok = (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| t.n[a][b][c] == t.n[b][a][c])));
            checks.push(Check::new("N_ab^c = N_ba^c", ok));
        }
    }
    let mut table = vec![vec!["a".to_string(), "b".to_string(), "a ⊛ b".to_string()]];
    for a in 0..k {
        for b in 0..k {
            let terms: Vec<String> =
                (0..k)
                    .filter(|&c| t.n[a][b][c] > 0)
                    .map(|c| {
                        if t.n[a][b][c] == 1 {
                            t.labels[c].clone()
                        } else {
                            format!("{}·{}", t.n[a][b][c], t.labels[c])
                        }
                    })
                    .collect();
            table.push(vec![
                t.labels[a].clone(),
                t.labels[b].clone(),
                if terms.is_empty() { "0".into() } else { terms.join(" + ") },
            ]);
        }
    }
    let product_name = match p {
        ProductArg::Conv => "conv",
        ProductArg::Red => "red",
        ProductArg::Redz => "redz",
    };
    let results = json!({
        "labels": t.labels,
        "dims": dims,
        "product": product_name,
        "n": t.n,
    });
    Ok(Report::new("fusion", json!({"group": name, "product": product_name}), &[zoo_text], results, checks)
        .with_table(table))
}

fn dual_indices(simples: &[bundle::Simple]) -> drinfeld_core::Result<Vec<usize>> {
    simples
        .iter()
        .map(|s| {
            let d = bundle::dual_convolution(&s.bundle);
            for (c, t) in simples.iter().enumerate() {
                if t.bundle.fiber_dims() == d.fiber_dims() && !bundle::bundle_hom_space(&d, &t.bundle)?.is_empty() {
                    return Ok(c);
                }
            }
            Err(drinfeld_core::Error::BadBundle("dual of a simple is not simple".into()))
        })
        .collect()
}

pub fn torus(zoo: &Zoo, zoo_text: &str, name: &str) -> Res {
    let e = zoo.get(name).map_err(err)?;
    let t = torus_center_check(&e.group);
    let results = json!({
        "center_dim_torus_algebra": t.lhs,
        "sum_center_dims_of_centralizer_doubles": t.rhs,
        "orbit_weighted_count": t.orbit_count,
    });
    let checks = vec![
        Check::new("center dim D_T²(G) = Σ_κ center dim D(Z(g))", t.lhs == t.rhs),
        Check::new("Σ_κ center dim D(Z(g)) = Σ_orbits #classes(stabilizer)", t.rhs == t.orbit_count),
    ];
    let table = vec![vec![t.lhs.to_string(), "=".into(), t.rhs.to_string(), "=".into(), t.orbit_count.to_string()]];
    Ok(Report::new("torus", json!({"group": name}), &[zoo_text], results, checks).with_table(table))
}

fn load_labels(arg: &str) -> Result<(FusionLabelSet, String), String> {
    let set = match arg {
        "fibonacci" => FusionLabelSet::fibonacci(),
        "ising" => FusionLabelSet::ising(),
        "rep_s3" => FusionLabelSet::rep_s3(),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            FusionLabelSet::from_json(&text).map_err(err)?
        }
    };
    let text = set.to_json();
    Ok((set, text))
}

fn cyclo_json(c: &Cyclo) -> Value {
    json!({"value": c, "display": c.to_string(), "approx": c.to_f64()})
}

pub fn matvec(arg: &str) -> Res {
    let (set, text) = load_labels(arg)?;
    let n = set.len();
    let left = matvec::left_dim_matrix(&set).map_err(err)?;
    let right = matvec::right_dim_matrix(&set).map_err(err)?;
    let mut checks = Vec::new();
    let mut simple_ok = true;
    let mut um_ok = true;
    let mut dim_ok = true;
    let mut oracle_ok = true;
    for i in 0..n {
        for j in 0..n {
            let x = MatVecObject::simple(n, i, j);
            let l = matvec::left_dim(&x, &set).map_err(err)?;
            let r = matvec::right_dim(&x, &set).map_err(err)?;
            dim_ok &= l == left[i][j] && r == right[i][j] && (&l * &r).is_one();
            let u = matvec::um_action(&x, &set).map_err(err)?;
            um_ok &= matvec::um_action(&u, &set).map_err(err)? == x && matvec::left_dim(&u, &set).map_err(err)? == r;
            for k in 0..n {
                for l2 in 0..n {
                    let y = MatVecObject::simple(n, k, l2);
                    let p = matvec::red_product(&x, &y).map_err(err)?;
                    let expect = if j == k { MatVecObject::simple(n, i, l2) } else { MatVecObject::zero(n) };
                    simple_ok &= p == expect;
                    oracle_ok &= matvec::red_product_bruteforce(&x, &y).map_err(err)? == p;
                    let lhs = matvec::um_action(&p, &set).map_err(err)?;
                    let rhs = matvec::red_product(
                        &matvec::um_action(&y, &set).map_err(err)?,
                        &matvec::um_action(&x, &set).map_err(err)?,
                    )
                    .map_err(err)?;
                    um_ok &= lhs == rhs;
                }
            }
        }
    }
    let unit = MatVecObject::unit(n);
    let unit_ok = (0..n).all(|i| {
        (0..n).all(|j| {
            let x = MatVecObject::simple(n, i, j);
            matvec::red_product(&unit, &x).unwrap() == x && matvec::red_product(&x, &unit).unwrap() == x
        })
    });
    checks.push(Check::new("X_i^j ⊗̄ X_k^l = δ_jk X_i^l", simple_ok));
    checks.push(Check::new("matrix product agrees with the sum-over-simples definition", oracle_ok));
    checks.push(Check::new("⊕ X_i^i is a two-sided unit", unit_ok));
    checks.push(Check::new("left dim d_j/d_i, right dim d_i/d_j, product 1", dim_ok));
    checks.push(Check::new("U_M² = id, U_M reverses products, left∘U_M = right", um_ok));
    checks.push(Check::new(
        "left dim of the unit = #labels",
        matvec::left_dim(&unit, &set).map_err(err)? == Cyclo::from_int(n as i64),
    ));
    let results = json!({
        "name": set.name,
        "labels": set.labels,
        "dual": set.dual,
        "dims": set.dims.iter().map(cyclo_json).collect::<Vec<_>>(),
        "left_dim": left.iter().map(|r| r.iter().map(cyclo_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "right_dim": right.iter().map(|r| r.iter().map(cyclo_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "simple_products": matvec::simple_fusion_table(n),
    });
    let mut table = vec![std::iter::once("d_j/d_i".to_string()).chain(set.labels.iter().cloned()).collect::<Vec<_>>()];
    for (i, row) in left.iter().enumerate() {
        table.push(std::iter::once(set.labels[i].clone()).chain(row.iter().map(|c| c.to_string())).collect());
    }
    Ok(Report::new("matvec", json!({"labels": arg}), &[&text], results, checks).with_table(table))
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Q => "q",
        Suite::Super => "super",
        Suite::Pivotal => "pivotal",
        Suite::Sliding => "sliding",
        Suite::Uequiv => "uequiv",
    }
}

pub fn oracle(zoo: &Zoo, zoo_text: &str, name: &str, suite: Suite, trials: usize, seed: u64) -> Res {
    let e = zoo.get(name).map_err(err)?;
    let g = &e.group;
    let simples = zoo.simples(name).map_err(err)?;
    let mut r = rng(seed);
    let mut checks = Vec::new();
    let mut details = Vec::new();
    match suite {
        Suite::Q | Suite::Super => {
            if suite == Suite::Super && g.z().is_none() {
                return Err(format!("{name} has no central element z; the super suite needs one"));
            }
            for t in 0..trials {
                let v = random_bundle(&simples, 2, &mut r);
                let w = random_bundle(&simples, 2, &mut r);
                let rep = if suite == Suite::Q { oracle::q_report(&v, &w) } else { oracle::q_report_super(&v, &w) }
                    .map_err(err)?;
                checks.push(Check::with_witness(
                    format!("trial {t}: dims {}×{}", v.dim(), w.dim()),
                    rep.pass(),
                    || serde_json::to_string(&rep).unwrap(),
                ));
                details.push(serde_json::to_value(&rep).unwrap());
            }
            if suite == Suite::Super {
                for s in &simples {
                    let rep = oracle::super_zigzag(&s.bundle).map_err(err)?;
                    checks.push(Check::with_witness(format!("super zig-zag on {}", s.label), rep.pass(), || {
                        format!("{:?}", rep.checks)
                    }));
                }
            }
        }
        Suite::Pivotal => {
            let mut objects: Vec<(String, EquivariantBundle)> =
                vec![("1̄".into(), EquivariantBundle::unit_reduced(g.clone()))];
            objects.extend(simples.iter().map(|s| (s.label.clone(), s.bundle.clone())));
            for t in 0..trials {
                objects.push((format!("random {t}"), random_bundle(&simples, 2, &mut r)));
            }
            for (label, v) in &objects {
                let rep = oracle::pivotal_checks(v, &e.irreps, Normalization::Correct).map_err(err)?;
                for (c, ok) in &rep.checks {
                    checks.push(Check::new(format!("{label}: {c}"), *ok));
                }
            }
            let wrong =
                oracle::pivotal_checks(&objects[0].1, &e.irreps, Normalization::DropInverseSqrtD).map_err(err)?;
            checks.push(Check::with_witness(
                "dropping 1/√D in ev and coev scales the snake by D",
                wrong.snake_scalar.as_deref() == Some(g.order().to_string().as_str()),
                || format!("{:?}", wrong.snake_scalar),
            ));
            details.push(json!({"conductor": e.conductor(), "objects": objects.len()}));
        }
        Suite::Sliding => {
            let m = e.conductor();
            let irr = e.irreps.lift(m).map_err(err)?;
            for (label, x) in irr.labels.iter().zip(&irr.irreps) {
                let c = oracle::combine_identity(std::slice::from_ref(x), &irr).map_err(err)?;
                checks.push(Check::new(format!("combine on {label}"), c.is_identity()));
                for cls in g.conjugacy_classes() {
                    let dec: Vec<(usize, Cyclo)> = cls.members.iter().map(|&h| (h, Cyclo::one())).collect();
                    let (l, mid, rt) = oracle::sliding_check(x, &dec, &irr).map_err(err)?;
                    checks.push(Check::with_witness(
                        format!("sliding: strand {label}, loop decorated by class of {}", cls.representative),
                        l == mid && mid == rt,
                        || format!("left {:?} middle {:?}", l.get(0, 0), mid.get(0, 0)),
                    ));
                }
            }
            // naturality with a random intertwiner into V ⊕ V
            for (label, x) in irr.labels.iter().zip(&irr.irreps) {
                let w = x.direct_sum(x).map_err(err)?;
                let hom = intertwiner_space(x, &w).map_err(err)?;
                let f = hom.iter().enumerate().fold(drinfeld_core::linalg::Mat::zeros(w.dim, x.dim), |acc, (k, h)| {
                    acc.add(&h.scale(&Cyclo::from_int(k as i64 + 1)))
                });
                let (lhs, rhs) = oracle::al_natural(x, &w, &[x.dual()], &f).map_err(err)?;
                checks.push(Check::new(format!("dual-basis naturality on {label}"), lhs == rhs));
            }
        }
        Suite::Uequiv => {
            let mut objects: Vec<(String, EquivariantBundle)> =
                simples.iter().map(|s| (s.label.clone(), s.bundle.clone())).collect();
            for t in 0..trials {
                objects.push((format!("random {t}"), random_bundle(&simples, 2, &mut r)));
            }
            for (label, v) in &objects {
                checks.push(Check::new(
                    format!("{label}: δ_g through the dual half-braiding = δ_(g⁻¹)"),
                    oracle::u_equivariance_check(v, false).map_err(err)?,
                ));
                if g.z().is_some() {
                    checks.push(Check::new(
                        format!("{label}: same with Koszul crossings"),
                        oracle::u_equivariance_check(v, true).map_err(err)?,
                    ));
                }
                let u = bundle::us_action(v);
                checks.push(Check::new(format!("{label}: U_S² = id"), bundle::us_action(&u) == *v));
            }
        }
    }
    let table = Vec::new();
    let results = json!({"seed": seed, "trials": trials, "details": details});
    Ok(Report::new(
        "oracle",
        json!({"suite": suite_name(suite), "group": name, "trials": trials, "seed": seed}),
        &[zoo_text],
        results,
        checks,
    )
    .with_table(table))
}

pub fn zoo_dump(zoo: &Zoo, zoo_text: &str) -> Res {
    let results = serde_json::to_value(zoo.to_file()).map_err(err)?;
    let checks = vec![Check::new("zoo validates", zoo.validate().is_ok())];
    let table = zoo
        .entries
        .iter()
        .map(|e| vec![e.name.clone(), e.group.order().to_string(), e.irreps.labels.join(" ")])
        .collect();
    Ok(Report::new("zoo", json!({}), &[zoo_text], results, checks).with_table(table))
}
