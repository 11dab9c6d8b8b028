//! Shipped groups and irreducible representations, plus the zoo JSON format.
//!
//! Every conjugacy class of every group carries a cross-reference to a zoo
//! group isomorphic to its centralizer, with an explicit embedding; the
//! simples of D(G) are induced from those irreps.

use crate::error::{Error, Result};
use crate::group::{group_from_table, FiniteGroup, Subgroup};
use crate::linalg::Mat;
use crate::rep::{session_conductor, zoo_validate, GModule, IrrepZoo};
use crate::scalar::Cyclo;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Names of the groups in [`Zoo::builtin`].
pub const BUILTIN_GROUPS: [&str; 7] = ["Z2", "Z3", "Z4", "V4", "S3", "D4", "Q8"];

#[derive(Clone, Debug)]
pub struct CentralizerRef {
    /// Any element of the class (normalized to the class representative).
    pub element: usize,
    /// Zoo group isomorphic to the centralizer.
    pub group: String,
    /// `embedding[a]` is the ambient element matching element `a` of `group`.
    pub embedding: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub irreps: IrrepZoo,
    pub centralizers: Vec<CentralizerRef>,
}

impl ZooEntry {
    /// Session conductor lcm(exp G, 4|G|, 4·max d_i).
    pub fn conductor(&self) -> u32 {
        session_conductor(&self.group, self.irreps.max_dim())
    }
}

#[derive(Clone, Debug)]
pub struct Zoo {
    pub entries: Vec<ZooEntry>,
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

fn s3_elements() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

fn s3_table() -> Vec<Vec<usize>> {
    let els = s3_elements();
    let idx = |p: [usize; 3]| els.iter().position(|q| *q == p).unwrap();
    els.iter().map(|p| els.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect()).collect()
}

/// r^a s^b ↦ a + 4b.
fn d4_table() -> Vec<Vec<usize>> {
    let mul = |x: usize, y: usize| {
        let (a, b, c, d) = (x % 4, x / 4, y % 4, y / 4);
        let rot = if b == 0 { (a + c) % 4 } else { (a + 4 - c) % 4 };
        rot + 4 * ((b + d) % 2)
    };
    (0..8).map(|x| (0..8).map(|y| mul(x, y)).collect()).collect()
}

/// 1, −1, i, −i, j, −j, k, −k.
fn q8_table() -> Vec<Vec<usize>> {
    // unit products: (sign, unit) for units 1,i,j,k
    let unit = |u: usize, v: usize| -> (bool, usize) {
        match (u, v) {
            (0, x) | (x, 0) => (false, x),
            (a, b) if a == b => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let mul = |x: usize, y: usize| {
        let (sx, ux, sy, uy) = (x % 2 == 1, x / 2, y % 2 == 1, y / 2);
        let (s, u) = unit(ux, uy);
        2 * u + usize::from(sx ^ sy ^ s)
    };
    (0..8).map(|x| (0..8).map(|y| mul(x, y)).collect()).collect()
}

fn table_for(name: &str) -> Vec<Vec<usize>> {
    match name {
        "Z2" => cyclic_table(2),
        "Z3" => cyclic_table(3),
        "Z4" => cyclic_table(4),
        "V4" => (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect(),
        "S3" => s3_table(),
        "D4" => d4_table(),
        "Q8" => q8_table(),
        _ => unreachable!(),
    }
}

fn z_for(name: &str) -> Option<usize> {
    match name {
        "Z4" => Some(2),
        "Q8" => Some(1),
        _ => None,
    }
}

fn m(rows: Vec<Vec<i64>>) -> Mat {
    Mat::from_rows(rows.into_iter().map(|r| r.into_iter().map(Cyclo::from_int).collect()).collect())
}

fn scalar(c: Cyclo) -> Mat {
    Mat::from_rows(vec![vec![c]])
}

fn builtin_irreps(name: &str, g: &Arc<FiniteGroup>) -> Vec<(String, GModule)> {
    let gen = |imgs: Vec<(usize, Mat)>| GModule::from_generators(g.clone(), &imgs).expect("builtin irrep");
    match name {
        "Z2" | "Z3" | "Z4" => {
            let n = g.order();
            (0..n).map(|k| (format!("chi{k}"), gen(vec![(1, scalar(Cyclo::zeta_pow(n as u32, k as i64)))]))).collect()
        }
        "V4" => (0..4)
            .map(|k| {
                let (s, t) = ((k >> 1) & 1, k & 1);
                let sg = |e: usize| Cyclo::from_int(if e == 1 { -1 } else { 1 });
                (format!("chi{s}{t}"), gen(vec![(2, scalar(sg(s))), (1, scalar(sg(t)))]))
            })
            .collect(),
        "S3" => {
            let els = s3_elements();
            let sign = |p: &[usize; 3]| {
                let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                if inv % 2 == 0 {
                    1
                } else {
                    -1
                }
            };
            // standard rep in the basis e0 − e2, e1 − e2 of the sum-zero plane
            let standard = |p: &[usize; 3]| {
                let f = |x: usize| -> [i64; 2] {
                    match x {
                        0 => [1, 0],
                        1 => [0, 1],
                        _ => [0, 0],
                    }
                };
                let c0 = [f(p[0])[0] - f(p[2])[0], f(p[0])[1] - f(p[2])[1]];
                let c1 = [f(p[1])[0] - f(p[2])[0], f(p[1])[1] - f(p[2])[1]];
                m(vec![vec![c0[0], c1[0]], vec![c0[1], c1[1]]])
            };
            vec![
                ("triv".into(), GModule::trivial(g.clone())),
                (
                    "sign".into(),
                    GModule::character(g.clone(), els.iter().map(|p| Cyclo::from_int(sign(p))).collect()).unwrap(),
                ),
                ("std".into(), GModule::from_matrices(g.clone(), els.iter().map(standard).collect()).unwrap()),
            ]
        }
        "D4" => {
            let mut out: Vec<(String, GModule)> = Vec::new();
            for (lab, er, es) in [("triv", 1, 1), ("chi_r", 1, -1), ("chi_s", -1, 1), ("chi_rs", -1, -1)] {
                out.push((lab.into(), gen(vec![(1, m(vec![vec![er]])), (4, m(vec![vec![es]]))])));
            }
            out.push((
                "rot".into(),
                gen(vec![(1, m(vec![vec![0, -1], vec![1, 0]])), (4, m(vec![vec![1, 0], vec![0, -1]]))]),
            ));
            out
        }
        "Q8" => {
            let mut out: Vec<(String, GModule)> = Vec::new();
            for (lab, ei, ej) in [("triv", 1, 1), ("chi_i", 1, -1), ("chi_j", -1, 1), ("chi_k", -1, -1)] {
                out.push((lab.into(), gen(vec![(2, m(vec![vec![ei]])), (4, m(vec![vec![ej]]))])));
            }
            let i = Cyclo::zeta_pow(4, 1);
            let ri = Mat::from_rows(vec![vec![i.clone(), Cyclo::zero()], vec![Cyclo::zero(), -i]]);
            out.push(("spin".into(), gen(vec![(2, ri), (4, m(vec![vec![0, -1], vec![1, 0]]))])));
            out
        }
        _ => unreachable!(),
    }
}

/// Search for an isomorphism from `h` onto the subset `target` of `g`.
pub fn find_embedding(h: &FiniteGroup, g: &FiniteGroup, target: &[usize]) -> Option<Vec<usize>> {
    if h.order() != target.len() {
        return None;
    }
    let gens = h.generators().to_vec();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().map(|&c| target[c]).collect();
        if let Some(emb) = extend_hom(h, g, &gens, &images) {
            let mut img: Vec<usize> = emb.clone();
            img.sort_unstable();
            img.dedup();
            let mut t = target.to_vec();
            t.sort_unstable();
            let z_ok = match (h.z(), g.z()) {
                (Some(zh), Some(zg)) => emb[zh] == zg,
                _ => true,
            };
            if img == t && z_ok {
                return Some(emb);
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == choice.len() {
                return None;
            }
            choice[k] += 1;
            if choice[k] < target.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Extend generator images to a homomorphism h → g, if consistent.
pub fn extend_hom(h: &FiniteGroup, g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; h.order()];
    map[h.identity()] = g.identity();
    let mut frontier = vec![h.identity()];
    while let Some(x) = frontier.pop() {
        for (s, t) in gens.iter().zip(images) {
            let y = h.mul(x, *s);
            let v = g.mul(map[x], *t);
            if map[y] == usize::MAX {
                map[y] = v;
                frontier.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    map.iter().all(|&x| x != usize::MAX).then_some(map)
}

fn is_hom(h: &FiniteGroup, g: &FiniteGroup, map: &[usize]) -> bool {
    map.len() == h.order()
        && map.iter().all(|&x| x < g.order())
        && (0..h.order()).all(|a| (0..h.order()).all(|b| map[h.mul(a, b)] == g.mul(map[a], map[b])))
}

impl Zoo {
    /// Z/2, Z/3, Z/4 (z = 2), Z/2², S3, D4, Q8 (z = −1).
    pub fn builtin() -> Zoo {
        let mut entries: Vec<ZooEntry> = Vec::new();
        for name in BUILTIN_GROUPS {
            let mut g = group_from_table(&table_for(name)).expect("builtin table");
            if let Some(z) = z_for(name) {
                g = g.with_z(z).expect("builtin z");
            }
            let g = Arc::new(g);
            let (labels, irreps) = builtin_irreps(name, &g).into_iter().unzip();
            entries.push(ZooEntry {
                name: name.into(),
                group: g.clone(),
                irreps: IrrepZoo { group: g, labels, irreps },
                centralizers: Vec::new(),
            });
        }
        // centralizer cross-references, preferring the group itself
        let snapshot = entries.clone();
        for e in &mut entries {
            for class in e.group.conjugacy_classes() {
                let target = e.group.centralizer_elements(class.representative);
                let found = std::iter::once(&snapshot.iter().find(|x| x.name == e.name).unwrap())
                    .copied()
                    .chain(snapshot.iter())
                    .find_map(|cand| {
                        let h = if e.group.z().is_some() {
                            (*cand.group).clone()
                        } else {
                            (*cand.group).clone().without_z()
                        };
                        find_embedding(&h, &e.group, &target).map(|emb| (cand.name.clone(), emb))
                    })
                    .expect("every builtin centralizer is in the zoo");
                e.centralizers.push(CentralizerRef {
                    element: class.representative,
                    group: found.0,
                    embedding: found.1,
                });
            }
        }
        Zoo { entries }
    }

    pub fn get(&self, name: &str) -> Result<&ZooEntry> {
        self.entries.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownGroup(name.into()))
    }

    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|e| e.name.clone()).collect()
    }

    /// Centralizer of `g` in `name`, with its irreps transported to the
    /// subgroup's local indexing and lifted to conductor `m`.
    pub fn centralizer_irreps(&self, name: &str, g: usize, m: u32) -> Result<(Subgroup, IrrepZoo)> {
        let e = self.get(name)?;
        let class = e.group.class_index(g);
        let cref = e
            .centralizers
            .iter()
            .find(|c| e.group.class_index(c.element) == class)
            .ok_or(Error::MissingCentralizerZoo(g))?;
        let hz = self.get(&cref.group).map_err(|_| Error::MissingCentralizerZoo(g))?;
        let sub = e.group.centralizer(g);
        // conjugate the embedding so it lands on Z(g) rather than Z(rep)
        let rep = cref.element;
        let x = (0..e.group.order()).find(|&x| e.group.conj(x, rep) == g).expect("same class");
        let emb: Vec<usize> = cref.embedding.iter().map(|&a| e.group.conj(x, a)).collect();
        let mut abstract_of = vec![usize::MAX; sub.order()];
        for (a, &amb) in emb.iter().enumerate() {
            let l = sub.to_local(amb).ok_or_else(|| Error::BadZoo(format!("embedding misses Z({g})")))?;
            abstract_of[l] = a;
        }
        let grp = Arc::new(sub.group.clone());
        let irreps = hz
            .irreps
            .irreps
            .iter()
            .map(|x| {
                let rho = abstract_of.iter().map(|&a| x.rho[a].clone()).collect();
                GModule::from_matrices(grp.clone(), rho)?.lift(m)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((sub, IrrepZoo { group: grp, labels: hz.irreps.labels.clone(), irreps }))
    }

    /// Check all invariants: irreps validate, every class has a centralizer
    /// reference to a zoo group, and every embedding is an isomorphism onto
    /// the centralizer.
    pub fn validate(&self) -> Result<()> {
        for e in &self.entries {
            let rep = zoo_validate(&e.irreps);
            if !rep.pass {
                return Err(Error::BadZoo(format!("{}: {}", e.name, rep.failures.join("; "))));
            }
            for class in e.group.conjugacy_classes() {
                let c = e
                    .centralizers
                    .iter()
                    .find(|c| e.group.class_index(c.element) == e.group.class_index(class.representative))
                    .ok_or(Error::MissingCentralizerZoo(class.representative))?;
                let h = self.get(&c.group).map_err(|_| Error::MissingCentralizerZoo(class.representative))?;
                let target = e.group.centralizer_elements(c.element);
                let mut img = c.embedding.clone();
                img.sort_unstable();
                img.dedup();
                if !is_hom(&h.group, &e.group, &c.embedding) || img != target {
                    return Err(Error::BadZoo(format!(
                        "{}: embedding of {} is not an isomorphism onto Z({})",
                        e.name, c.group, c.element
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> ZooFile {
        let groups = self
            .entries
            .iter()
            .map(|e| GroupJson {
                name: e.name.clone(),
                table: e.group.table(),
                z: e.group.z(),
                centralizers: e
                    .centralizers
                    .iter()
                    .map(|c| CentralizerJson {
                        element: c.element,
                        group: c.group.clone(),
                        embedding: c.embedding.clone(),
                    })
                    .collect(),
            })
            .collect();
        let irreps = self
            .entries
            .iter()
            .map(|e| {
                let list = e
                    .irreps
                    .labels
                    .iter()
                    .zip(&e.irreps.irreps)
                    .map(|(l, x)| IrrepJson {
                        label: l.clone(),
                        dim: x.dim,
                        matrices: x.rho.iter().enumerate().map(|(g, mm)| (g.to_string(), mm.to_rows())).collect(),
                    })
                    .collect();
                (e.name.clone(), list)
            })
            .collect();
        ZooFile { schema: 1, groups, irreps }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Zoo> {
        let f: ZooFile = serde_json::from_str(text).map_err(|e| Error::BadZoo(e.to_string()))?;
        Zoo::from_file(f)
    }

    pub fn from_file(f: ZooFile) -> Result<Zoo> {
        if f.schema != 1 {
            return Err(Error::BadZoo(format!("unsupported schema {}", f.schema)));
        }
        let mut entries = Vec::new();
        for gj in &f.groups {
            let mut g = group_from_table(&gj.table)?;
            if let Some(z) = gj.z {
                g = g.with_z(z)?;
            }
            let g = Arc::new(g);
            let list = f.irreps.get(&gj.name).ok_or_else(|| Error::BadZoo(format!("no irreps for {}", gj.name)))?;
            let mut labels = Vec::new();
            let mut irreps = Vec::new();
            for ij in list {
                let mut rho = Vec::with_capacity(g.order());
                for el in 0..g.order() {
                    let rows = ij
                        .matrices
                        .get(&el.to_string())
                        .ok_or_else(|| Error::BadZoo(format!("{}/{}: no matrix for {el}", gj.name, ij.label)))?;
                    if rows.len() != ij.dim || rows.iter().any(|r| r.len() != ij.dim) {
                        return Err(Error::BadZoo(format!("{}/{}: bad matrix shape", gj.name, ij.label)));
                    }
                    rho.push(Mat::from_rows(rows.clone()));
                }
                let x = GModule::from_matrices(g.clone(), rho)
                    .map_err(|e| Error::BadZoo(format!("{}/{}: {e}", gj.name, ij.label)))?;
                labels.push(ij.label.clone());
                irreps.push(x);
            }
            entries.push(ZooEntry {
                name: gj.name.clone(),
                group: g.clone(),
                irreps: IrrepZoo { group: g, labels, irreps },
                centralizers: gj
                    .centralizers
                    .iter()
                    .map(|c| CentralizerRef {
                        element: c.element,
                        group: c.group.clone(),
                        embedding: c.embedding.clone(),
                    })
                    .collect(),
            });
        }
        let zoo = Zoo { entries };
        zoo.validate()?;
        Ok(zoo)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZooFile {
    pub schema: u32,
    pub groups: Vec<GroupJson>,
    pub irreps: BTreeMap<String, Vec<IrrepJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub table: Vec<Vec<usize>>,
    pub z: Option<usize>,
    #[serde(default)]
    pub centralizers: Vec<CentralizerJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralizerJson {
    pub element: usize,
    pub group: String,
    pub embedding: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrrepJson {
    pub label: String,
    pub dim: usize,
    pub matrices: BTreeMap<String, Vec<Vec<Cyclo>>>,
}

impl Zoo {
    /// All simple D(G)-modules of a zoo group, at the group's session conductor.
    pub fn simples(&self, name: &str) -> Result<Vec<crate::bundle::Simple>> {
        let e = self.get(name)?;
        let m = e.conductor();
        let cents = e
            .group
            .conjugacy_classes()
            .iter()
            .map(|c| self.centralizer_irreps(name, c.representative, m))
            .collect::<Result<Vec<_>>>()?;
        crate::bundle::simples(&e.group, &cents)
    }
}
