//! String-diagram composites evaluated as explicit linear maps.
//!
//! A [`Composite`] is a pipeline of primitive steps acting on a list of
//! wires (tensor factors). Each step replaces a block of adjacent wires by
//! another block; evaluation pushes sparse tensors through the steps, so the
//! regular object k[G] can be threaded through without materializing
//! |G|²·dim V·dim W square matrices.

use crate::bundle::{reduced_tensor, reduced_tensor_z, EquivariantBundle};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::Mat;
use crate::rep::{invariants_and_dual_basis, GModule, IrrepZoo};
use crate::scalar::{sqrt_ratio, Cyclo};
use serde::Serialize;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

pub type Combo = Vec<(usize, Cyclo)>;

/// One primitive step: a linear map on wires `pos..pos+input.len()`.
#[derive(Clone)]
pub struct Step {
    pub name: String,
    pub pos: usize,
    pub input: Vec<usize>,
    pub output: Vec<usize>,
    f: Rc<dyn Fn(usize) -> Combo>,
}

impl std::fmt::Debug for Step {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}@{} {:?}→{:?}", self.name, self.pos, self.input, self.output)
    }
}

fn from_mat(m: &Mat, j: usize) -> Combo {
    m.column(j)
}

impl Step {
    /// Generic step from a function on local basis indices (row-major over
    /// the input wires) to combinations of local output indices.
    pub fn from_fn(
        name: &str,
        pos: usize,
        input: Vec<usize>,
        output: Vec<usize>,
        f: impl Fn(usize) -> Combo + 'static,
    ) -> Step {
        Step { name: name.into(), pos, input, output, f: Rc::new(f) }
    }

    /// A matrix acting on a block of wires (Kronecker order).
    pub fn linear(name: &str, pos: usize, input: Vec<usize>, output: Vec<usize>, m: Mat) -> Step {
        assert_eq!(m.cols, input.iter().product::<usize>());
        assert_eq!(m.rows, output.iter().product::<usize>());
        Step::from_fn(name, pos, input, output, move |j| from_mat(&m, j))
    }

    pub fn identity() -> Step {
        Step::from_fn("id", 0, vec![], vec![], |_| vec![(0, Cyclo::one())])
    }

    pub fn scale(c: Cyclo) -> Step {
        Step::from_fn("scale", 0, vec![], vec![], move |_| vec![(0, c.clone())])
    }

    /// P: a⊗b ↦ b⊗a.
    pub fn swap(pos: usize, da: usize, db: usize) -> Step {
        Step::from_fn("swap", pos, vec![da, db], vec![db, da], move |j| {
            let (a, b) = (j / db, j % db);
            vec![(b * da + a, Cyclo::one())]
        })
    }

    /// P∘K with the Koszul operator K = ½(1 + z_A⊗1 + 1⊗z_B − z_A⊗z_B),
    /// i.e. the flip with sign (−1)^{|a||b|}.
    pub fn super_swap(pos: usize, za: &Mat, zb: &Mat) -> Step {
        let (da, db) = (za.rows, zb.rows);
        let one_a = Mat::identity(da);
        let one_b = Mat::identity(db);
        let k =
            one_a.kron(&one_b).add(&za.kron(&one_b)).add(&one_a.kron(zb)).sub(&za.kron(zb)).scale(&Cyclo::frac(1, 2));
        let p = Mat::from_columns(
            da * db,
            &(0..da * db).map(|j| vec![((j % db) * da + j / db, Cyclo::one())]).collect::<Vec<_>>(),
        );
        Step::linear("super_swap", pos, vec![da, db], vec![db, da], p.mul(&k))
    }

    /// Insert a fixed vector on new wires at `pos`.
    pub fn insert(name: &str, pos: usize, output: Vec<usize>, v: Combo) -> Step {
        Step::from_fn(name, pos, vec![], output, move |_| v.clone())
    }

    /// Apply a covector to the block of wires at `pos`, removing them.
    pub fn functional(name: &str, pos: usize, input: Vec<usize>, f: impl Fn(usize) -> Cyclo + 'static) -> Step {
        Step::from_fn(name, pos, input, vec![], move |j| {
            let c = f(j);
            if c.is_zero() {
                vec![]
            } else {
                vec![(0, c)]
            }
        })
    }

    /// R = Σ_g ρ_X(g)⊗δ_g on X⊗V.
    pub fn r_matrix(pos: usize, x: &GModule, v: &EquivariantBundle) -> Step {
        let (dx, dv) = (x.dim, v.dim());
        let rho = x.rho.clone();
        let grade = v.grade.clone();
        Step::from_fn("R", pos, vec![dx, dv], vec![dx, dv], move |j| {
            let (a, b) = (j / dv, j % dv);
            rho[grade[b]].column(a).into_iter().map(|(a2, c)| (a2 * dv + b, c)).collect()
        })
    }

    /// The module action of a fixed matrix on one wire.
    pub fn on_wire(name: &str, pos: usize, m: &Mat) -> Step {
        Step::linear(name, pos, vec![m.cols], vec![m.rows], m.clone())
    }

    /// coev for k[G]⊗F(G): 1 ↦ Σ_g g⊗δ_g.
    pub fn coev_kf(pos: usize, n: usize) -> Step {
        Step::insert("coev_K", pos, vec![n, n], (0..n).map(|g| (g * n + g, Cyclo::one())).collect())
    }

    /// ev for k[G]⊗F(G) or F(G)⊗k[G]: the pairing ⟨δ_x, g⟩ = [x = g].
    pub fn ev_kf(pos: usize, n: usize) -> Step {
        Step::functional("ev_K", pos, vec![n, n], move |j| Cyclo::from_int((j / n == j % n) as i64))
    }

    /// coev for a module: 1 ↦ Σ_i e_i⊗e^i.
    pub fn coev_module(pos: usize, d: usize) -> Step {
        Step::insert("coev", pos, vec![d, d], (0..d).map(|i| (i * d + i, Cyclo::one())).collect())
    }

    /// ev for a module, dual first: e^i⊗e_j ↦ δ_ij.
    pub fn ev_module(pos: usize, d: usize) -> Step {
        Step::functional("ev", pos, vec![d, d], move |j| Cyclo::from_int((j / d == j % d) as i64))
    }
}

/// γ = P∘R on X⊗V: x⊗v ↦ v⊗ρ_X(grade v)x.
pub fn gamma(pos: usize, x: &GModule, v: &EquivariantBundle) -> Vec<Step> {
    vec![Step::r_matrix(pos, x, v), Step::swap(pos, x.dim, v.dim())]
}

/// An ordered pipeline of steps on a list of wires.
#[derive(Clone, Debug)]
pub struct Composite {
    pub name: String,
    pub input: Vec<usize>,
    pub steps: Vec<Step>,
}

fn split(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
    out
}

fn join(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}

impl Composite {
    pub fn new(name: &str, input: Vec<usize>) -> Composite {
        Composite { name: name.into(), input, steps: Vec::new() }
    }

    pub fn then(mut self, s: Step) -> Self {
        self.steps.push(s);
        self
    }

    pub fn then_all(mut self, s: Vec<Step>) -> Self {
        self.steps.extend(s);
        self
    }

    /// Concatenation: `self` followed by `o`.
    pub fn concat(mut self, o: &Composite) -> Self {
        self.steps.extend(o.steps.iter().cloned());
        self
    }

    /// Wire dimensions after every step; ShapeMismatch names the bad step.
    pub fn shapes(&self) -> Result<Vec<Vec<usize>>> {
        let mut cur = self.input.clone();
        let mut out = vec![cur.clone()];
        for (k, s) in self.steps.iter().enumerate() {
            let end = s.pos + s.input.len();
            if end > cur.len() || cur[s.pos..end] != s.input[..] {
                return Err(Error::ShapeMismatch(format!(
                    "{}: step {k} ({}) expects {:?} at wire {}, found {:?}",
                    self.name, s.name, s.input, s.pos, cur
                )));
            }
            cur.splice(s.pos..end, s.output.iter().copied());
            out.push(cur.clone());
        }
        Ok(out)
    }

    pub fn output(&self) -> Result<Vec<usize>> {
        Ok(self.shapes()?.pop().unwrap())
    }

    /// Image of one input basis vector as a sparse tensor.
    fn push(&self, shapes: &[Vec<usize>], caches: &mut [HashMap<usize, Combo>], start: usize) -> Combo {
        let mut state: HashMap<Vec<usize>, Cyclo> = HashMap::new();
        state.insert(split(start, &shapes[0]), Cyclo::one());
        for (k, s) in self.steps.iter().enumerate() {
            let mut next: HashMap<Vec<usize>, Cyclo> = HashMap::new();
            let end = s.pos + s.input.len();
            for (idx, c) in state {
                let local = join(&idx[s.pos..end], &s.input);
                let img = caches[k].entry(local).or_insert_with(|| (s.f)(local));
                for (o, c2) in img.iter() {
                    let mut ni = idx[..s.pos].to_vec();
                    ni.extend(split(*o, &s.output));
                    ni.extend_from_slice(&idx[end..]);
                    let e = next.entry(ni).or_insert_with(Cyclo::zero);
                    *e += &(&c * c2);
                }
            }
            next.retain(|_, v| !v.is_zero());
            state = next;
        }
        let last = shapes.last().unwrap();
        state.into_iter().map(|(idx, c)| (join(&idx, last), c)).collect()
    }

    /// The composite as a single matrix (rows: output, columns: input).
    pub fn evaluate(&self) -> Result<Mat> {
        let shapes = self.shapes()?;
        let din: usize = shapes[0].iter().product();
        let dout: usize = shapes.last().unwrap().iter().product();
        let mut caches = vec![HashMap::new(); self.steps.len()];
        let mut m = Mat::zeros(dout, din);
        for j in 0..din {
            for (i, c) in self.push(&shapes, &mut caches, j) {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }
}

fn regular_k(g: &Arc<FiniteGroup>) -> GModule {
    GModule::regular(g.clone())
}

/// F(G) = k[G]*, with h·δ_x = δ_{hx}.
fn regular_f(g: &Arc<FiniteGroup>) -> GModule {
    GModule::regular(g.clone()).dual()
}

fn crossing(super_: bool, pos: usize, a: &Mat, b: &Mat) -> Step {
    if super_ {
        Step::super_swap(pos, a, b)
    } else {
        Step::swap(pos, a.rows, b.rows)
    }
}

fn z_of(g: &FiniteGroup, m: &[Mat]) -> Mat {
    m[g.z_or_identity()].clone()
}

/// The projector Q_{γ,μ} on V⊗W, with the regular object realized as k[G]:
/// insert (1/|G|) Σ g⊗δ_g, cross F over V, apply the half-braidings of V
/// on k[G] and of W on F(G), cross k[G] back over W, and pair.
pub fn q_composite(v: &EquivariantBundle, w: &EquivariantBundle, super_: bool) -> Result<Composite> {
    crate::rep::same_group(&v.group, &w.group)?;
    if super_ && v.group.z().is_none() {
        return Err(Error::ZMissing);
    }
    let g = &v.group;
    let n = g.order();
    let (k, f) = (regular_k(g), regular_f(g));
    let (zk, zf, zv, zw) = (z_of(g, &k.rho), z_of(g, &f.rho), z_of(g, &v.action), z_of(g, &w.action));
    let name = if super_ { "q_projector_super" } else { "q_projector" };
    Ok(Composite::new(name, vec![v.dim(), w.dim()])
        .then(Step::coev_kf(0, n))
        .then(Step::scale(Cyclo::frac(1, n as i64)))
        .then(crossing(super_, 1, &zf, &zv))
        .then_all(gamma(0, &k, v))
        .then_all(gamma(2, &f, w))
        .then(crossing(super_, 1, &zk, &zw))
        .then(Step::ev_kf(2, n)))
}

pub fn q_projector(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<Mat> {
    q_composite(v, w, false)?.evaluate()
}

pub fn q_projector_super(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<Mat> {
    q_composite(v, w, true)?.evaluate()
}

/// Action of δ_b on (the image in) V⊗W: insert e ∈ k[G], braid it past V,
/// cross it over W, and read off δ_b.
pub fn grading_composite(v: &EquivariantBundle, w: &EquivariantBundle, b: usize, super_: bool) -> Composite {
    let g = &v.group;
    let n = g.order();
    let k = regular_k(g);
    let e = g.identity();
    Composite::new("grading", vec![v.dim(), w.dim()])
        .then(Step::insert("unit", 0, vec![n], vec![(e, Cyclo::one())]))
        .then_all(gamma(0, &k, v))
        .then(crossing(super_, 1, &z_of(g, &k.rho), &z_of(g, &w.action)))
        .then(Step::functional("delta", 2, vec![n], move |x| Cyclo::from_int((x == b) as i64)))
}

/// Outcome of the Q-projector comparison for one pair of bundles.
#[derive(Clone, Debug, Serialize)]
pub struct QReport {
    pub idempotent: bool,
    pub equivariant: bool,
    pub image_graded_dims: Vec<usize>,
    pub expected_graded_dims: Vec<usize>,
    /// Q equals the block projector predicted by the fiber bookkeeping.
    pub matches_block_formula: bool,
    /// The image, as a bundle, is isomorphic to the fiberwise product via an
    /// explicit invertible bundle map.
    pub isomorphic: bool,
}

impl QReport {
    pub fn pass(&self) -> bool {
        self.idempotent
            && self.equivariant
            && self.image_graded_dims == self.expected_graded_dims
            && self.matches_block_formula
            && self.isomorphic
    }
}

fn q_check(v: &EquivariantBundle, w: &EquivariantBundle, super_: bool) -> Result<QReport> {
    let g = &v.group;
    let q = q_composite(v, w, super_)?.evaluate()?;
    let idempotent = q.mul(&q) == q;
    let kron: Vec<Mat> = (0..g.order()).map(|h| v.action[h].kron(&w.action[h])).collect();
    let equivariant = g.generators().iter().all(|&s| kron[s].mul(&q) == q.mul(&kron[s]));
    let projs = (0..g.order())
        .map(|b| Ok(grading_composite(v, w, b, super_).evaluate()?.mul(&q)))
        .collect::<Result<Vec<_>>>()?;
    let image_graded_dims: Vec<usize> = projs.iter().map(|p| p.rank()).collect();
    let expected = if super_ { reduced_tensor_z(v, w)? } else { reduced_tensor(v, w)? };
    let expected_graded_dims = expected.fiber_dims();
    let block = block_formula(v, w, super_)?;
    let image = crate::bundle::bundle_from_image(g, &kron, &projs)?;
    let isomorphic = crate::bundle::find_isomorphism(&image, &expected)?.is_some();
    Ok(QReport {
        idempotent,
        equivariant,
        image_graded_dims,
        expected_graded_dims,
        matches_block_formula: block == q,
        isomorphic,
    })
}

/// The projector predicted by hand: on V^σ_a⊗W^τ_b it is
/// [b = a·z^{σ+τ}] (plain case: [a = b]), written in the given bases.
fn block_formula(v: &EquivariantBundle, w: &EquivariantBundle, super_: bool) -> Result<Mat> {
    let g = &v.group;
    let (pv, pw) = if super_ {
        (parity_projectors(v)?, parity_projectors(w)?)
    } else {
        (vec![Mat::identity(v.dim())], vec![Mat::identity(w.dim())])
    };
    let z = g.z_or_identity();
    let zp = |k: usize| if k.is_multiple_of(2) { g.identity() } else { z };
    let d = v.dim() * w.dim();
    let mut out = Mat::zeros(d, d);
    for a in 0..g.order() {
        for b in 0..g.order() {
            for (s, ps) in pv.iter().enumerate() {
                for (t, pt) in pw.iter().enumerate() {
                    if b == g.mul(a, zp(s + t)) {
                        out = out.add(&v.proj(a).mul(ps).kron(&w.proj(b).mul(pt)));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// (1 ± z)/2 on a bundle.
pub fn parity_projectors(v: &EquivariantBundle) -> Result<Vec<Mat>> {
    let z = v.z_matrix()?;
    let id = Mat::identity(v.dim());
    let h = Cyclo::frac(1, 2);
    Ok(vec![id.add(z).scale(&h), id.sub(z).scale(&h)])
}

pub fn q_report(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<QReport> {
    q_check(v, w, false)
}

pub fn q_report_super(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<QReport> {
    q_check(v, w, true)
}

/// The δ_g-action computed through the dualized half-braiding (insert e,
/// cross V, insert coev of k[G], braid, cross back, pair, read δ_g).
/// Equals the action of δ_{g⁻¹} on V.
pub fn u_equivariance_composite(v: &EquivariantBundle, g_el: usize, super_: bool) -> Result<Composite> {
    if super_ && v.group.z().is_none() {
        return Err(Error::ZMissing);
    }
    let g = &v.group;
    let n = g.order();
    let (k, f) = (regular_k(g), regular_f(g));
    let (zk, zv) = (z_of(g, &k.rho), z_of(g, &v.action));
    Ok(Composite::new("u_equivariance", vec![v.dim()])
        .then(Step::insert("unit", 0, vec![n], vec![(g.identity(), Cyclo::one())]))
        .then(crossing(super_, 0, &zk, &zv))
        .then(Step::coev_kf(0, n))
        .then_all(gamma(1, &f, v))
        .then(crossing(super_, 0, &zk, &zv))
        .then(Step::ev_kf(2, n))
        .then(Step::functional("delta", 1, vec![n], move |x| Cyclo::from_int((x == g_el) as i64))))
}

pub fn u_equivariance_check(v: &EquivariantBundle, super_: bool) -> Result<bool> {
    let g = &v.group;
    for x in 0..g.order() {
        let lhs = u_equivariance_composite(v, x, super_)?.evaluate()?;
        if lhs != v.proj(g.inv(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// P̂: (1/|G|)·(partial trace over k[G] of γ), and the same built from
/// Σ_i (d_i/D) ptr γ_{X_i}.
pub fn p_hat_regular(v: &EquivariantBundle) -> Result<Mat> {
    let g = &v.group;
    let n = g.order();
    let k = regular_k(g);
    Composite::new("p_hat", vec![v.dim()])
        .then(Step::coev_kf(0, n))
        .then(Step::swap(1, n, v.dim()))
        .then_all(gamma(0, &k, v))
        .then(Step::ev_kf(1, n))
        .then(Step::scale(Cyclo::frac(1, n as i64)))
        .evaluate()
}

pub fn p_hat_irreps(v: &EquivariantBundle, zoo: &IrrepZoo) -> Result<Mat> {
    let g = &v.group;
    let dd = g.order() as i64;
    let mut out = Mat::zeros(v.dim(), v.dim());
    for x in &zoo.irreps {
        let d = x.dim;
        let c = Composite::new("p_hat_i", vec![v.dim()])
            .then(Step::coev_module(0, d))
            .then(Step::swap(1, d, v.dim()))
            .then_all(gamma(0, x, v))
            .then(Step::ev_module(1, d))
            .then(Step::scale(Cyclo::frac(d as i64, dd)));
        out = out.add(&c.evaluate()?);
    }
    Ok(out)
}

/// Normalization used for ev/coev in the pivotal composites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// √(d_i/D), as required.
    Correct,
    /// √d_i: the 1/√D factors dropped from ev and coev.
    DropInverseSqrtD,
}

#[derive(Clone, Debug, Serialize)]
pub struct PivotalReport {
    pub conductor: u32,
    pub checks: Vec<(String, bool)>,
    /// Scalar c with snake = c·id, when the snake is a multiple of id.
    pub snake_scalar: Option<String>,
}

impl PivotalReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.1)
    }
}

/// The wire I(1) = ⊕_i X_i⊗X_i*, with (i, a, f) at offset_i + a·d_i + f.
struct UnitWire {
    offsets: Vec<usize>,
    dims: Vec<usize>,
    total: usize,
}

impl UnitWire {
    fn new(zoo: &IrrepZoo) -> Self {
        let dims = zoo.dims();
        let mut offsets = Vec::new();
        let mut t = 0;
        for d in &dims {
            offsets.push(t);
            t += d * d;
        }
        UnitWire { offsets, dims, total: t }
    }
    fn split(&self, j: usize) -> (usize, usize, usize) {
        let i = self.offsets.iter().rposition(|&o| o <= j).unwrap();
        let r = j - self.offsets[i];
        (i, r / self.dims[i], r % self.dims[i])
    }
}

/// Unit constraints, ev and coev of the reduced product on the center,
/// written out for a bundle V (half-braiding γ = P∘R) with the √(d_i/D)
/// normalizations, and the identities they must satisfy.
pub fn pivotal_checks(v: &EquivariantBundle, zoo: &IrrepZoo, norm: Normalization) -> Result<PivotalReport> {
    let g = &v.group;
    let m = crate::rep::session_conductor(g, zoo.max_dim());
    let zoo = zoo.lift(m)?;
    let dd = g.order() as u64;
    let s: Vec<Cyclo> = zoo.dims().iter().map(|&d| sqrt_ratio(d as u64, dd, m)).collect::<Result<_>>()?;
    let s_evc: Vec<Cyclo> = match norm {
        Normalization::Correct => s.clone(),
        Normalization::DropInverseSqrtD => {
            zoo.dims().iter().map(|&d| crate::scalar::sqrt_int(d as u64, m)).collect::<Result<_>>()?
        }
    };
    let u = Rc::new(UnitWire::new(&zoo));
    let dv = v.dim();
    let grade = Rc::new(v.grade.clone());
    let rho: Rc<Vec<Vec<Mat>>> = Rc::new(zoo.irreps.iter().map(|x| x.rho.clone()).collect());
    let inv: Rc<Vec<usize>> = Rc::new((0..g.order()).map(|x| g.inv(x)).collect());

    // l: I(1)⊗V → V, (i,a,f)⊗v ↦ s_i ρ_i(x)[f][a] v for v over x.
    let unit_l = {
        let (u, grade, rho, s) = (u.clone(), grade.clone(), rho.clone(), s.clone());
        Step::from_fn("l", 0, vec![u.total, dv], vec![dv], move |j| {
            let (ia, vi) = (j / dv, j % dv);
            let (i, a, f) = u.split(ia);
            let c = rho[i][grade[vi]].get(f, a);
            if c.is_zero() {
                vec![]
            } else {
                vec![(vi, &s[i] * c)]
            }
        })
    };
    // l⁻¹: v ↦ Σ_j s_j Σ_{b,c} ρ_j(x⁻¹)[b][c] (j,b,c)⊗v.
    let unit_l_inv = {
        let (u, grade, rho, s, inv) = (u.clone(), grade.clone(), rho.clone(), s.clone(), inv.clone());
        Step::from_fn("l_inv", 0, vec![dv], vec![u.total, dv], move |vi| {
            let x = inv[grade[vi]];
            let mut out = Vec::new();
            for (j, r) in rho.iter().enumerate() {
                let d = u.dims[j];
                for b in 0..d {
                    for c in 0..d {
                        let e = r[x].get(b, c);
                        if !e.is_zero() {
                            out.push(((u.offsets[j] + b * d + c) * dv + vi, &s[j] * e));
                        }
                    }
                }
            }
            out
        })
    };
    let unit_r = {
        let (u, grade, rho, s) = (u.clone(), grade.clone(), rho.clone(), s.clone());
        Step::from_fn("r", 0, vec![dv, u.total], vec![dv], move |j| {
            let (vi, ia) = (j / u.total, j % u.total);
            let (i, a, f) = u.split(ia);
            let c = rho[i][grade[vi]].get(f, a);
            if c.is_zero() {
                vec![]
            } else {
                vec![(vi, &s[i] * c)]
            }
        })
    };
    let unit_r_inv = {
        let (u, grade, rho, s, inv) = (u.clone(), grade.clone(), rho.clone(), s.clone(), inv.clone());
        Step::from_fn("r_inv", 0, vec![dv], vec![dv, u.total], move |vi| {
            let x = inv[grade[vi]];
            let mut out = Vec::new();
            for (j, r) in rho.iter().enumerate() {
                let d = u.dims[j];
                for b in 0..d {
                    for c in 0..d {
                        let e = r[x].get(b, c);
                        if !e.is_zero() {
                            out.push((vi * u.total + u.offsets[j] + b * d + c, &s[j] * e));
                        }
                    }
                }
            }
            out
        })
    };
    // ev: V^∨⊗V → I(1), e^p⊗e_q ↦ [p = q] Σ_i s_i ρ_i(x⁻¹)[a][f] (i,a,f).
    let ev = {
        let (u, grade, rho, s, inv) = (u.clone(), grade.clone(), rho.clone(), s_evc.clone(), inv.clone());
        Step::from_fn("ev", 1, vec![dv, dv], vec![u.total], move |j| {
            let (p, q) = (j / dv, j % dv);
            if p != q {
                return vec![];
            }
            let x = inv[grade[q]];
            let mut out = Vec::new();
            for (i, r) in rho.iter().enumerate() {
                let d = u.dims[i];
                for a in 0..d {
                    for f in 0..d {
                        let e = r[x].get(a, f);
                        if !e.is_zero() {
                            out.push((u.offsets[i] + a * d + f, &s[i] * e));
                        }
                    }
                }
            }
            out
        })
    };
    // coev: I(1) → V⊗V^∨, (i,a,f) ↦ s_i Σ_g ρ_i(g)[f][a] Σ_{c over g} e_c⊗e^c.
    let coev = {
        let (u, grade, rho, s) = (u.clone(), grade.clone(), rho.clone(), s_evc.clone());
        Step::from_fn("coev", 0, vec![u.total], vec![dv, dv], move |ia| {
            let (i, a, f) = u.split(ia);
            let mut out = Vec::new();
            for c in 0..dv {
                let e = rho[i][grade[c]].get(f, a);
                if !e.is_zero() {
                    out.push((c * dv + c, &s[i] * e));
                }
            }
            out
        })
    };

    let id = Mat::identity(dv);
    let ev_comp = |name: &str, steps: Vec<Step>, input: Vec<usize>| -> Result<Mat> {
        let mut c = Composite::new(name, input);
        for st in steps {
            c = c.then(st);
        }
        c.evaluate()
    };
    let l_linv = ev_comp("l∘l⁻¹", vec![unit_l_inv.clone(), unit_l.clone()], vec![dv])?;
    let r_rinv = ev_comp("r∘r⁻¹", vec![unit_r_inv.clone(), unit_r.clone()], vec![dv])?;
    let linv_l = ev_comp("l⁻¹∘l", vec![unit_l.clone(), unit_l_inv.clone()], vec![u.total, dv])?;
    let rinv_r = ev_comp("r⁻¹∘r", vec![unit_r.clone(), unit_r_inv.clone()], vec![dv, u.total])?;
    // snake: V → I(1)⊗V → V⊗V^∨⊗V → V⊗I(1) → V
    let snake = ev_comp("snake", vec![unit_l_inv, coev, ev, unit_r], vec![dv])?;

    let mut checks = vec![
        ("l∘l⁻¹ = id".to_string(), l_linv == id),
        ("r∘r⁻¹ = id".to_string(), r_rinv == id),
        ("l⁻¹∘l idempotent of rank dim V".to_string(), linv_l.mul(&linv_l) == linv_l && linv_l.rank() == dv),
        ("r⁻¹∘r idempotent of rank dim V".to_string(), rinv_r.mul(&rinv_r) == rinv_r && rinv_r.rank() == dv),
        ("(id⊗ev)∘(coev⊗id) = id".to_string(), snake == id),
    ];
    let dual2 = crate::bundle::dual_reduced(&crate::bundle::dual_reduced(v));
    checks.push(("V^∨∨ = V".to_string(), dual2 == *v));
    let snake_scalar = if dv == 0 {
        None
    } else {
        let c = snake.get(0, 0).clone();
        (snake == id.scale(&c)).then(|| c.to_string())
    };
    Ok(PivotalReport { conductor: m, checks, snake_scalar })
}

/// Zig-zag for the z-twisted product on a parity-adapted V:
/// x ∈ V^σ_g ↦ 1_{gz^σ}⊗x ↦ coev ↦ (id⊗ev) ↦ x. Also checks that ev kills
/// the odd part of V^∨⊗_zV and that every intermediate term lies in the
/// twisted products.
pub fn super_zigzag(v: &EquivariantBundle) -> Result<PivotalReport> {
    let g = &v.group;
    let z = g.z().ok_or(Error::ZMissing)?;
    let v = v.parity_adapted()?;
    let p = Rc::new(v.parity.clone().unwrap());
    let grade = Rc::new(v.grade.clone());
    let n = g.order();
    let dv = v.dim();
    let unit = EquivariantBundle::unit_reduced(g.clone());
    let dual = crate::bundle::dual_reduced(&v).parity_adapted()?;
    let zp = {
        let g = g.clone();
        move |s: u8| if s.is_multiple_of(2) { g.identity() } else { z }
    };
    let l_inv = {
        let (p, grade, g, zp) = (p.clone(), grade.clone(), g.clone(), zp.clone());
        Step::from_fn("l_inv", 0, vec![dv], vec![n, dv], move |x| {
            vec![(g.mul(grade[x], zp(p[x])) * dv + x, Cyclo::one())]
        })
    };
    let coev = {
        let (p, grade, g, zp) = (p.clone(), grade.clone(), g.clone(), zp.clone());
        Step::from_fn("coev", 0, vec![n], vec![dv, dv], move |c| {
            (0..dv).filter(|&u| grade[u] == g.mul(c, zp(p[u]))).map(|u| (u * dv + u, Cyclo::one())).collect()
        })
    };
    let ev =
        Step::from_fn(
            "ev",
            1,
            vec![dv, dv],
            vec![],
            move |j| {
                if j / dv == j % dv {
                    vec![(0, Cyclo::one())]
                } else {
                    vec![]
                }
            },
        );
    let snake =
        Composite::new("super_snake", vec![dv]).then(l_inv.clone()).then(coev.clone()).then(ev.clone()).evaluate()?;

    // membership of every produced term in the twisted products
    let unit_pairs: Vec<(usize, usize)> = crate::bundle::reduced_z_pairs(&unit, &v)?.into_iter().map(|x| x.0).collect();
    let l_ok = (0..dv).all(|x| l_inv.clone_apply(x).iter().all(|(o, _)| unit_pairs.contains(&(o / dv, o % dv))));
    let coev_pairs: Vec<(usize, usize)> = crate::bundle::reduced_z_pairs(&v, &dual)?.into_iter().map(|x| x.0).collect();
    let coev_ok = (0..n).all(|c| coev.clone_apply(c).iter().all(|(o, _)| coev_pairs.contains(&(o / dv, o % dv))));
    let ev_pairs = crate::bundle::reduced_z_pairs(&dual, &v)?;
    let (pd, pv) = (dual.parity.clone().unwrap(), v.parity.clone().unwrap());
    let odd_zero = ev_pairs.iter().filter(|((a, b), _)| (pd[*a] + pv[*b]) % 2 == 1).all(|((a, b), _)| a != b);
    let even_nonzero = (0..dv).all(|u| ev_pairs.iter().any(|((a, b), _)| *a == u && *b == u));
    let checks = vec![
        ("ev∘coev = id (super)".to_string(), snake == Mat::identity(dv)),
        ("unit constraint lands in 1̄⊗_zV".to_string(), l_ok),
        ("coev lands in V⊗_zV^∨".to_string(), coev_ok),
        ("ev vanishes on the odd part".to_string(), odd_zero),
        ("ev is the pairing on the even part".to_string(), even_nonzero),
    ];
    Ok(PivotalReport { conductor: v.group.order() as u32, checks, snake_scalar: None })
}

impl Step {
    fn clone_apply(&self, j: usize) -> Combo {
        (self.f)(j)
    }
}

/// Completeness of dual bases: Σ_i d_i Σ_α φ_α∘φ^α = id on V₁⊗…⊗Vₙ, where φ_α runs over
/// ⟨V₁,…,Vₙ,X_i*⟩ (maps X_i → V) and φ^α over the dual basis (maps V → X_i).
pub fn combine_identity(list: &[GModule], zoo: &IrrepZoo) -> Result<Mat> {
    let v = GModule::tensor_all(list)?;
    let dv = v.dim;
    let dims: Vec<usize> = list.iter().map(|m| m.dim).collect();
    let rev = reversed_positions(&dims);
    let mut total = Mat::zeros(dv, dv);
    for x in &zoo.irreps {
        let dx = x.dim;
        let mut wires = list.to_vec();
        wires.push(x.dual());
        let b = invariants_and_dual_basis(&wires)?;
        for (phi, psi) in b.basis.iter().zip(&b.dual) {
            // φ ∈ V⊗X*: X → V;  ψ ∈ X⊗V*(reversed factors): V → X
            let mut mphi = Mat::zeros(dv, dx);
            for r in 0..dv {
                for c in 0..dx {
                    mphi.set(r, c, phi[r * dx + c].clone());
                }
            }
            let mut mpsi = Mat::zeros(dx, dv);
            for r in 0..dx {
                for (c_rev, &c) in rev.iter().enumerate() {
                    mpsi.set(r, c, psi[r * dv + c_rev].clone());
                }
            }
            total = total.add(&mphi.mul(&mpsi).scale(&Cyclo::from_int(dx as i64)));
        }
    }
    Ok(total)
}

/// Sliding lemma for a strand V through a regular loop decorated by a
/// central element c = Σ c_g g. Returns (left, middle, right): the strand
/// beside the loop traced over k[G], the strand attached to the loop
/// through dual bases, and the strand beside the loop traced over Σ d_i X_i.
pub fn sliding_check(v: &GModule, c: &[(usize, Cyclo)], zoo: &IrrepZoo) -> Result<(Mat, Mat, Mat)> {
    let g = &v.group;
    let dv = v.dim;
    let k = regular_k(g);
    let left = Mat::identity(dv).scale(&k.act_element(c).trace());
    let mut right_scalar = Cyclo::zero();
    for x in &zoo.irreps {
        right_scalar += &(x.act_element(c).trace() * Cyclo::from_int(x.dim as i64));
    }
    let right = Mat::identity(dv).scale(&right_scalar);
    // middle: Σ_{i,j} d_i d_j Σ_α ptr_{X_i}[(id⊗ρ_i(c))·M_α·N_α], with
    // M_α: X_j → V⊗X_i from ⟨V, X_i, X_j*⟩ and N_α its dual.
    let mut middle = Mat::zeros(dv, dv);
    for xi in &zoo.irreps {
        let di = xi.dim;
        let ci = Mat::identity(dv).kron(&xi.act_element(c));
        let mut inner = Mat::zeros(dv * di, dv * di);
        for xj in &zoo.irreps {
            inner = inner.add(&combine_identity(
                &[v.clone(), xi.clone()],
                &IrrepZoo { group: zoo.group.clone(), labels: vec![], irreps: vec![xj.clone()] },
            )?);
        }
        let t = ci.mul(&inner);
        // partial trace over X_i
        for a in 0..dv {
            for b in 0..dv {
                let mut s = Cyclo::zero();
                for x in 0..di {
                    s += t.get(a * di + x, b * di + x);
                }
                let cur = middle.get(a, b) + &(s * Cyclo::from_int(di as i64));
                middle.set(a, b, cur);
            }
        }
    }
    Ok((left, middle, right))
}

/// Naturality of dual-basis sums: for f: V₁ → W₁ (a G-map),
/// Σ_α φ^α ⊗ (f⊗id)φ_α = Σ_β (id⊗f*)ψ^β ⊗ ψ_β as vectors of
/// (R*⊗V₁*)⊗(W₁⊗R), where R = V₂⊗…⊗Vₙ.
pub fn al_natural(v1: &GModule, w1: &GModule, rest: &[GModule], f: &Mat) -> Result<(Vec<Cyclo>, Vec<Cyclo>)> {
    let r = GModule::tensor_all(rest)?;
    let dr = r.dim;
    let (dv, dw) = (v1.dim, w1.dim);
    let mut lv = vec![v1.clone()];
    lv.extend(rest.iter().cloned());
    let mut lw = vec![w1.clone()];
    lw.extend(rest.iter().cloned());
    let a = invariants_and_dual_basis(&lv)?;
    let b = invariants_and_dual_basis(&lw)?;
    let f_id = f.kron(&Mat::identity(dr));
    // f* on V₁*⊗… from W₁*: (id_{R*} ⊗ fᵀ) with R* in reversed order
    let rdual_dim = dr;
    let id_ft = Mat::identity(rdual_dim).kron(&f.transpose());
    let out_dim = dr * dv * dw * dr;
    let outer = |x: &[Cyclo], y: &[Cyclo]| -> Vec<Cyclo> {
        let mut o = Vec::with_capacity(x.len() * y.len());
        for p in x {
            for q in y {
                o.push(p * q);
            }
        }
        o
    };
    let mut lhs = vec![Cyclo::zero(); out_dim];
    for (phi, psi) in a.basis.iter().zip(&a.dual) {
        let fphi = f_id.apply_sparse(&dense_to_sparse(phi));
        for (k, val) in outer(psi, &fphi).into_iter().enumerate() {
            lhs[k] += &val;
        }
    }
    let mut rhs = vec![Cyclo::zero(); out_dim];
    for (phi, psi) in b.basis.iter().zip(&b.dual) {
        let fpsi = id_ft.apply_sparse(&dense_to_sparse(psi));
        for (k, val) in outer(&fpsi, phi).into_iter().enumerate() {
            rhs[k] += &val;
        }
    }
    Ok((lhs, rhs))
}

fn dense_to_sparse(x: &[Cyclo]) -> Combo {
    x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// `out[r]` = forward (V₁…Vₙ row-major) index of the basis tensor whose
/// reversed-order (Vₙ…V₁) index is r.
pub fn reversed_positions(dims: &[usize]) -> Vec<usize> {
    let total: usize = dims.iter().product();
    let rdims: Vec<usize> = dims.iter().rev().copied().collect();
    let mut out = vec![0; total];
    for f in 0..total {
        let mut d = split(f, dims);
        d.reverse();
        out[join(&d, &rdims)] = f;
    }
    out
}
