//! D(G)-modules as G-equivariant vector bundles over G.
//!
//! A bundle has a basis in which every vector sits in a single fiber
//! (`grade[i]`), and a matrix for every group element with `action(h)`
//! carrying the fiber over g to the fiber over hgh⁻¹. The D(G) element
//! g⊗δ_h acts as `action(g) ∘ proj_h`.

use crate::algebra::{dg_index, QVec};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{normalize_sparse, null_space, Mat};
use crate::rep::{commutation_rows, intertwiner_space, same_group, GModule, IrrepZoo};
use crate::scalar::Cyclo;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct EquivariantBundle {
    pub group: Arc<FiniteGroup>,
    pub grade: Vec<usize>,
    pub action: Vec<Mat>,
    /// Parity of each basis vector, present when z acts diagonally by ±1.
    pub parity: Option<Vec<u8>>,
}

impl PartialEq for EquivariantBundle {
    fn eq(&self, o: &Self) -> bool {
        *self.group == *o.group && self.grade == o.grade && self.action == o.action && self.parity == o.parity
    }
}

/// The three tensor products on bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Product {
    /// (V⊗W)_g = ⊕_h V_{gh}⊗W_{h⁻¹}.
    Convolution,
    /// (V⊗̄W)_g = V_g⊗W_g.
    Reduced,
    /// z-twisted fiberwise product.
    ReducedZ,
}

impl EquivariantBundle {
    pub fn new(group: Arc<FiniteGroup>, grade: Vec<usize>, action: Vec<Mat>) -> Result<Self> {
        let mut b = EquivariantBundle { group, grade, action, parity: None };
        b.validate()?;
        b.parity = b.diagonal_parity();
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let d = self.dim();
        if self.action.len() != g.order() {
            return Err(Error::BadBundle("one action matrix per element expected".into()));
        }
        if self.grade.iter().any(|&x| x >= g.order()) {
            return Err(Error::BadBundle("grade out of range".into()));
        }
        for (h, m) in self.action.iter().enumerate() {
            if m.rows != d || m.cols != d {
                return Err(Error::BadBundle(format!("action({h}) has wrong shape")));
            }
            for i in 0..d {
                for j in 0..d {
                    if !m.get(i, j).is_zero() && self.grade[i] != g.conj(h, self.grade[j]) {
                        return Err(Error::BadBundle(format!("action({h}) leaves fiber structure at ({i},{j})")));
                    }
                }
            }
        }
        if !self.action[g.identity()].is_identity() && d > 0 {
            return Err(Error::BadBundle("identity does not act trivially".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.action[a].mul(&self.action[b]) != self.action[g.mul(a, b)] {
                    return Err(Error::BadBundle(format!("action({a})·action({b}) ≠ action({a}·{b})")));
                }
            }
        }
        Ok(())
    }

    fn diagonal_parity(&self) -> Option<Vec<u8>> {
        let z = self.group.z()?;
        let m = &self.action[z];
        let mut p = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if i != j && !m.get(i, j).is_zero() {
                    return None;
                }
            }
            let v = m.get(i, i);
            if v.is_one() {
                p.push(0);
            } else if *v == Cyclo::from_int(-1) {
                p.push(1);
            } else {
                return None;
            }
        }
        Some(p)
    }

    pub fn dim(&self) -> usize {
        self.grade.len()
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let parity = group.z().map(|_| Vec::new());
        EquivariantBundle { group, grade: Vec::new(), action: vec![Mat::zeros(0, 0); n], parity }
    }

    /// 1̄ = ⊕_g k_g (h permutes the points by conjugation).
    pub fn unit_reduced(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let action = (0..n)
            .map(|h| {
                let mut m = Mat::zeros(n, n);
                for x in 0..n {
                    m.set(group.conj(h, x), x, Cyclo::one());
                }
                m
            })
            .collect();
        EquivariantBundle::new(group, (0..n).collect(), action).expect("unit bundle")
    }

    /// k concentrated at e with trivial action: the unit for convolution.
    pub fn unit_convolution(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let e = group.identity();
        EquivariantBundle::new(group, vec![e], vec![Mat::identity(1); n]).expect("unit bundle")
    }

    pub fn fiber(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.grade[i] == g).collect()
    }

    pub fn fiber_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.group.order()];
        for &g in &self.grade {
            d[g] += 1;
        }
        d
    }

    /// (fiber, parity) → dimension, parity 0 if no z.
    pub fn graded_parity_dims(&self) -> Result<Vec<[usize; 2]>> {
        let a = if self.group.z().is_some() { self.parity_adapted()? } else { self.clone() };
        let mut d = vec![[0, 0]; self.group.order()];
        for i in 0..a.dim() {
            let p = a.parity.as_ref().map_or(0, |p| p[i]) as usize;
            d[a.grade[i]][p] += 1;
        }
        Ok(d)
    }

    /// Projection δ_h onto the fiber over h.
    pub fn proj(&self, h: usize) -> Mat {
        let mut m = Mat::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            if self.grade[i] == h {
                m.set(i, i, Cyclo::one());
            }
        }
        m
    }

    /// Matrix of an element of D(G) given in the basis g⊗δ_h.
    pub fn d_action(&self, x: &QVec) -> Mat {
        let n = self.group.order();
        let d = self.dim();
        let mut out = Mat::zeros(d, d);
        for (idx, c) in x {
            let (g, h) = (idx / n, idx % n);
            let c = Cyclo::rational(c.clone());
            for j in 0..d {
                if self.grade[j] != h {
                    continue;
                }
                for i in 0..d {
                    let v = self.action[g].get(i, j);
                    if !v.is_zero() {
                        let s = out.get(i, j) + &(v * &c);
                        out.set(i, j, s);
                    }
                }
            }
        }
        out
    }

    /// Action of g⊗δ_h.
    pub fn d_basis_action(&self, g: usize, h: usize) -> Mat {
        self.d_action(&vec![(dg_index(self.group.order(), g, h), num_traits::One::one())])
    }

    /// The underlying G-module (grading forgotten).
    pub fn forget(&self) -> GModule {
        GModule { group: self.group.clone(), dim: self.dim(), rho: self.action.clone() }
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        same_group(&self.group, &o.group)?;
        let grade = self.grade.iter().chain(&o.grade).copied().collect();
        let action = self.action.iter().zip(&o.action).map(|(a, b)| a.direct_sum(b)).collect();
        let parity = match (&self.parity, &o.parity) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Ok(EquivariantBundle { group: self.group.clone(), grade, action, parity })
    }

    /// Change basis to the columns of `t`, which must be block-diagonal with
    /// respect to the fibers (column j stays in fiber `grade[j]`).
    pub fn change_basis(&self, t: &Mat) -> Result<Self> {
        let d = self.dim();
        if t.rows != d || t.cols != d {
            return Err(Error::ShapeMismatch("change of basis".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if !t.get(i, j).is_zero() && self.grade[i] != self.grade[j] {
                    return Err(Error::BadBundle("change of basis mixes fibers".into()));
                }
            }
        }
        let ti = t.inverse().ok_or(Error::Singular)?;
        let action = self.action.iter().map(|a| ti.mul(a).mul(t)).collect();
        let mut b = EquivariantBundle { group: self.group.clone(), grade: self.grade.clone(), action, parity: None };
        b.parity = b.diagonal_parity();
        Ok(b)
    }

    /// Matrix of z.
    pub fn z_matrix(&self) -> Result<&Mat> {
        Ok(&self.action[self.group.z().ok_or(Error::ZMissing)?])
    }

    /// An isomorphic bundle whose basis diagonalizes z (even vectors first
    /// inside each fiber). Bundles already in that form are returned as is.
    pub fn parity_adapted(&self) -> Result<Self> {
        let z = self.z_matrix()?;
        if self.parity.is_some() {
            return Ok(self.clone());
        }
        let d = self.dim();
        let half = Cyclo::frac(1, 2);
        let id = Mat::identity(d);
        let e0 = id.add(z).scale(&half);
        let e1 = id.sub(z).scale(&half);
        let mut t = Mat::zeros(d, d);
        for g in 0..self.group.order() {
            let idx = self.fiber(g);
            if idx.is_empty() {
                continue;
            }
            let mut cols = Vec::new();
            for e in [&e0, &e1] {
                let sub = e.submatrix(&idx, &idx);
                for c in sub.independent_columns() {
                    cols.push((0..idx.len()).map(|r| sub.get(r, c).clone()).collect::<Vec<_>>());
                }
            }
            debug_assert_eq!(cols.len(), idx.len());
            for (slot, col) in idx.iter().zip(cols) {
                for (r, v) in idx.iter().zip(col) {
                    t.set(*r, *slot, v);
                }
            }
        }
        let b = self.change_basis(&t)?;
        debug_assert!(b.parity.is_some());
        Ok(b)
    }
}

/// Restriction of the diagonal action on V⊗W to the span of the listed
/// basis pairs (which must be an invariant subspace).
fn restrict_kron(v: &EquivariantBundle, w: &EquivariantBundle, pairs: &[(usize, usize)]) -> Vec<Mat> {
    let dw = w.dim();
    let mut pos = vec![usize::MAX; v.dim() * dw];
    for (k, (a, b)) in pairs.iter().enumerate() {
        pos[a * dw + b] = k;
    }
    (0..v.group.order())
        .map(|h| {
            let (av, aw) = (&v.action[h], &w.action[h]);
            let mut m = Mat::zeros(pairs.len(), pairs.len());
            for (col, (a, b)) in pairs.iter().enumerate() {
                for (a2, x) in av.column(*a) {
                    for (b2, y) in aw.column(*b) {
                        let row = pos[a2 * dw + b2];
                        assert!(row != usize::MAX, "pair subspace is not invariant");
                        m.set(row, col, &x * &y);
                    }
                }
            }
            m
        })
        .collect()
}

/// (V⊗W)_g = ⊕_h V_{gh}⊗W_{h⁻¹}: the pair (a, b) sits over grade(a)·grade(b).
/// Basis pairs in lexicographic order.
pub fn convolution_tensor(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<EquivariantBundle> {
    same_group(&v.group, &w.group)?;
    let g = &v.group;
    let pairs: Vec<(usize, usize)> = (0..v.dim()).flat_map(|a| (0..w.dim()).map(move |b| (a, b))).collect();
    let grade = pairs.iter().map(|&(a, b)| g.mul(v.grade[a], w.grade[b])).collect();
    let action = restrict_kron(v, w, &pairs);
    let mut out = EquivariantBundle { group: g.clone(), grade, action, parity: None };
    out.parity = out.diagonal_parity();
    Ok(out)
}

/// Basis pairs (a, b) of V⊗W with matching grades, lexicographic.
pub fn reduced_pairs(v: &EquivariantBundle, w: &EquivariantBundle) -> Vec<(usize, usize)> {
    (0..v.dim()).flat_map(|a| (0..w.dim()).filter(move |&b| v.grade[a] == w.grade[b]).map(move |b| (a, b))).collect()
}

/// (V⊗̄W)_g = V_g⊗W_g with the diagonal action.
pub fn reduced_tensor(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<EquivariantBundle> {
    same_group(&v.group, &w.group)?;
    let pairs = reduced_pairs(v, w);
    let grade = pairs.iter().map(|&(a, _)| v.grade[a]).collect();
    let action = restrict_kron(v, w, &pairs);
    let parity = match (&v.parity, &w.parity) {
        (Some(p), Some(q)) => Some(pairs.iter().map(|&(a, b)| (p[a] + q[b]) % 2).collect()),
        _ => None,
    };
    Ok(EquivariantBundle { group: v.group.clone(), grade, action, parity })
}

/// Pairs (a, b) of parity-adapted bases entering V⊗_zW, with their grades:
/// v ∈ V^σ_x and w ∈ W^τ_y pair up iff y = x·z^{σ+τ}, landing over x·z^τ.
pub fn reduced_z_pairs(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<Vec<((usize, usize), usize)>> {
    let g = &v.group;
    let z = g.z().ok_or(Error::ZMissing)?;
    let (pv, pw) = (v.parity.as_ref().ok_or(Error::ZMissing)?, w.parity.as_ref().ok_or(Error::ZMissing)?);
    let zp = |k: u8| if k.is_multiple_of(2) { g.identity() } else { z };
    let mut out = Vec::new();
    for a in 0..v.dim() {
        for b in 0..w.dim() {
            let (x, y) = (v.grade[a], w.grade[b]);
            if y == g.mul(x, zp(pv[a] + pw[b])) {
                out.push(((a, b), g.mul(x, zp(pw[b]))));
            }
        }
    }
    Ok(out)
}

/// (V⊗_zW)_g = ⊕_{σ,τ} V^σ_{gz^τ}⊗W^τ_{gz^σ}, computed on parity-adapted
/// bases of V and W; parity of a summand is σ+τ.
pub fn reduced_tensor_z(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<EquivariantBundle> {
    same_group(&v.group, &w.group)?;
    let (v, w) = (v.parity_adapted()?, w.parity_adapted()?);
    let entries = reduced_z_pairs(&v, &w)?;
    let pairs: Vec<(usize, usize)> = entries.iter().map(|e| e.0).collect();
    let grade = entries.iter().map(|e| e.1).collect();
    let (pv, pw) = (v.parity.as_ref().unwrap(), w.parity.as_ref().unwrap());
    let parity = Some(pairs.iter().map(|&(a, b)| (pv[a] + pw[b]) % 2).collect());
    let action = restrict_kron(&v, &w, &pairs);
    Ok(EquivariantBundle { group: v.group.clone(), grade, action, parity })
}

/// (V^∨)_g = (V_g)* with the contragredient action.
pub fn dual_reduced(v: &EquivariantBundle) -> EquivariantBundle {
    let g = &v.group;
    let action = (0..g.order()).map(|h| v.action[g.inv(h)].transpose()).collect();
    let mut out = EquivariantBundle { group: g.clone(), grade: v.grade.clone(), action, parity: None };
    out.parity = out.diagonal_parity();
    out
}

/// (V*)_g = (V_{g⁻¹})*.
pub fn dual_convolution(v: &EquivariantBundle) -> EquivariantBundle {
    us_action(&dual_reduced(v))
}

/// U_S: the fiber over g becomes V_{g⁻¹}; the action is unchanged, so
/// U_S∘U_S is the identity on the nose.
pub fn us_action(v: &EquivariantBundle) -> EquivariantBundle {
    let g = &v.group;
    EquivariantBundle {
        group: g.clone(),
        grade: v.grade.iter().map(|&x| g.inv(x)).collect(),
        action: v.action.clone(),
        parity: v.parity.clone(),
    }
}

/// Λ(V)_g = V⁰_g ⊕ V¹_{gz} (computed on a parity-adapted basis).
pub fn lambda_pullback(v: &EquivariantBundle) -> Result<EquivariantBundle> {
    let g = &v.group;
    let z = g.z().ok_or(Error::ZMissing)?;
    let a = v.parity_adapted()?;
    let p = a.parity.clone().unwrap();
    let grade = a.grade.iter().zip(&p).map(|(&x, &s)| if s == 1 { g.mul(x, z) } else { x }).collect();
    Ok(EquivariantBundle { group: g.clone(), grade, action: a.action, parity: Some(p) })
}

/// I(A): the constant bundle with fiber A; h sends (g, a) to (hgh⁻¹, ρ(h)a).
pub fn induction_i(a: &GModule) -> EquivariantBundle {
    let g = &a.group;
    let (n, d) = (g.order(), a.dim);
    let grade = (0..n * d).map(|i| i / d).collect();
    let action = (0..n)
        .map(|h| {
            let mut m = Mat::zeros(n * d, n * d);
            for x in 0..n {
                let y = g.conj(h, x);
                for k in 0..d {
                    for l in 0..d {
                        let v = a.rho[h].get(l, k);
                        if !v.is_zero() {
                            m.set(y * d + l, x * d + k, v.clone());
                        }
                    }
                }
            }
            m
        })
        .collect();
    let mut out = EquivariantBundle { group: g.clone(), grade, action, parity: None };
    out.parity = out.diagonal_parity();
    out
}

/// Basis of bundle maps V → W (fiber-preserving and G-equivariant).
pub fn bundle_hom_space(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<Vec<Mat>> {
    same_group(&v.group, &w.group)?;
    let (r, c) = (w.dim(), v.dim());
    let mut index = vec![None; r * c];
    let mut nvars = 0;
    for i in 0..r {
        for j in 0..c {
            if w.grade[i] == v.grade[j] {
                index[i * c + j] = Some(nvars);
                nvars += 1;
            }
        }
    }
    if nvars == 0 {
        return Ok(Vec::new());
    }
    let var = |i: usize, j: usize| index[i * c + j];
    let mut eqs = Vec::new();
    for &s in v.group.generators() {
        eqs.extend(commutation_rows(&w.action[s], &v.action[s], r, c, &var));
    }
    let mut back = vec![(0, 0); nvars];
    for i in 0..r {
        for j in 0..c {
            if let Some(k) = index[i * c + j] {
                back[k] = (i, j);
            }
        }
    }
    Ok(null_space(nvars, eqs)
        .into_iter()
        .map(|x| {
            let mut m = Mat::zeros(r, c);
            for (k, val) in x {
                m.set(back[k].0, back[k].1, val);
            }
            m
        })
        .collect())
}

pub fn is_bundle_map(v: &EquivariantBundle, w: &EquivariantBundle, f: &Mat) -> bool {
    if f.rows != w.dim() || f.cols != v.dim() {
        return false;
    }
    for i in 0..f.rows {
        for j in 0..f.cols {
            if !f.get(i, j).is_zero() && w.grade[i] != v.grade[j] {
                return false;
            }
        }
    }
    v.group.generators().iter().all(|&s| w.action[s].mul(f) == f.mul(&v.action[s]))
}

/// An explicit isomorphism of bundles, found from a Hom basis: the sum of
/// basis maps with small integer weights, retried until invertible.
pub fn find_isomorphism(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<Option<Mat>> {
    if v.fiber_dims() != w.fiber_dims() {
        return Ok(None);
    }
    let basis = bundle_hom_space(v, w)?;
    if v.dim() == 0 {
        return Ok(Some(Mat::zeros(0, 0)));
    }
    if basis.is_empty() {
        return Ok(None);
    }
    for attempt in 0..8i64 {
        let mut f = Mat::zeros(w.dim(), v.dim());
        for (k, b) in basis.iter().enumerate() {
            let c = Cyclo::from_int(1 + ((k as i64 * 7 + attempt * 13) % 11));
            f = f.add(&b.scale(&c));
        }
        if f.inverse().is_some() {
            debug_assert!(is_bundle_map(v, w, &f));
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Is `v` a direct summand of I(forget V)? (dim Hom(I(F V), V) ≥ 1.)
pub fn verify_dominance(v: &EquivariantBundle) -> Result<bool> {
    if v.dim() == 0 {
        return Err(Error::NotNonzero);
    }
    Ok(!bundle_hom_space(&induction_i(&v.forget()), v)?.is_empty())
}

/// k[G]⊗_{Z(g)}U graded by t⊗u ↦ tgt⁻¹.
pub fn induced_bundle(group: &Arc<FiniteGroup>, g: usize, sub: &Subgroup, u: &GModule) -> Result<EquivariantBundle> {
    let gr = group;
    let n = gr.order();
    // left coset representatives, identity first
    let mut reps: Vec<usize> = Vec::new();
    let mut coset_of = vec![usize::MAX; n];
    for t in std::iter::once(gr.identity()).chain(0..n) {
        if coset_of[t] != usize::MAX {
            continue;
        }
        for &s in &sub.elements {
            coset_of[gr.mul(t, s)] = reps.len();
        }
        reps.push(t);
    }
    let d = u.dim;
    let m = reps.len();
    let grade = (0..m * d).map(|i| gr.conj(reps[i / d], g)).collect();
    let action = (0..n)
        .map(|h| {
            let mut mat = Mat::zeros(m * d, m * d);
            for (i, &t) in reps.iter().enumerate() {
                let ht = gr.mul(h, t);
                let j = coset_of[ht];
                let s = gr.mul(gr.inv(reps[j]), ht);
                let ls = sub.to_local(s).expect("coset decomposition");
                for k in 0..d {
                    for l in 0..d {
                        let v = u.rho[ls].get(l, k);
                        if !v.is_zero() {
                            mat.set(j * d + l, i * d + k, v.clone());
                        }
                    }
                }
            }
            mat
        })
        .collect();
    EquivariantBundle::new(group.clone(), grade, action)
}

/// A simple D(G)-module with its (class, centralizer irrep) label.
#[derive(Clone, Debug)]
pub struct Simple {
    pub label: String,
    pub class_rep: usize,
    pub irrep: usize,
    pub bundle: EquivariantBundle,
}

/// Simples of D(G) from centralizer irreps: `centralizers[c]` supplies
/// (Z(g_c), irreps of Z(g_c)) for the representative of class c.
pub fn simples(group: &Arc<FiniteGroup>, centralizers: &[(Subgroup, IrrepZoo)]) -> Result<Vec<Simple>> {
    let classes = group.conjugacy_classes();
    let mut out = Vec::new();
    for class in classes {
        let g = class.representative;
        let (sub, zoo) = centralizers
            .iter()
            .find(|(s, _)| s.elements == group.centralizer_elements(g))
            .ok_or(Error::MissingCentralizerZoo(g))?;
        for (k, (label, u)) in zoo.labels.iter().zip(&zoo.irreps).enumerate() {
            out.push(Simple {
                label: format!("{g}:{label}"),
                class_rep: g,
                irrep: k,
                bundle: induced_bundle(group, g, sub, u)?,
            });
        }
    }
    Ok(out)
}

pub fn product(kind: Product, v: &EquivariantBundle, w: &EquivariantBundle) -> Result<EquivariantBundle> {
    match kind {
        Product::Convolution => convolution_tensor(v, w),
        Product::Reduced => reduced_tensor(v, w),
        Product::ReducedZ => reduced_tensor_z(v, w),
    }
}

/// N[a][b][c] = dim Hom(S_a ⊛ S_b, S_c).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FusionTable {
    pub labels: Vec<String>,
    pub product: Product,
    pub n: Vec<Vec<Vec<usize>>>,
}

pub fn fusion_table(simples: &[Simple], kind: Product) -> Result<FusionTable> {
    let k = simples.len();
    let mut n = vec![vec![vec![0; k]; k]; k];
    for a in 0..k {
        for b in 0..k {
            let p = product(kind, &simples[a].bundle, &simples[b].bundle)?;
            if p.dim() == 0 {
                continue;
            }
            let pd = p.fiber_dims();
            for c in 0..k {
                let sd = simples[c].bundle.fiber_dims();
                if sd.iter().zip(&pd).any(|(s, q)| *s > 0 && *q == 0) {
                    continue;
                }
                n[a][b][c] = bundle_hom_space(&p, &simples[c].bundle)?.len();
            }
        }
    }
    Ok(FusionTable { labels: simples.iter().map(|s| s.label.clone()).collect(), product: kind, n })
}

/// Hom_G(A, forget W): the adjunction partner of Hom(I(A), W).
pub fn adjunction_dims(a: &GModule, w: &EquivariantBundle) -> Result<(usize, usize)> {
    Ok((bundle_hom_space(&induction_i(a), w)?.len(), intertwiner_space(a, &w.forget())?.len()))
}

/// Symmetric braiding of (D(G)-mod, ⊗̄): the flip P on V⊗̄W → W⊗̄V.
pub fn braiding_reduced(v: &EquivariantBundle, w: &EquivariantBundle) -> Mat {
    let src = reduced_pairs(v, w);
    let tgt = reduced_pairs(w, v);
    let mut m = Mat::zeros(tgt.len(), src.len());
    for (j, &(a, b)) in src.iter().enumerate() {
        let i = tgt.iter().position(|&p| p == (b, a)).unwrap();
        m.set(i, j, Cyclo::one());
    }
    m
}

/// Super braiding of (D(G)-mod, ⊗_z): (−1)^{στ} P on parity-adapted bases.
pub fn braiding_z(v: &EquivariantBundle, w: &EquivariantBundle) -> Result<Mat> {
    let (v, w) = (v.parity_adapted()?, w.parity_adapted()?);
    let src = reduced_z_pairs(&v, &w)?;
    let tgt = reduced_z_pairs(&w, &v)?;
    let (pv, pw) = (v.parity.as_ref().unwrap(), w.parity.as_ref().unwrap());
    let mut m = Mat::zeros(tgt.len(), src.len());
    for (j, &((a, b), _)) in src.iter().enumerate() {
        let i = tgt.iter().position(|p| p.0 == (b, a)).unwrap();
        m.set(i, j, Cyclo::from_int(if pv[a] * pw[b] == 1 { -1 } else { 1 }));
    }
    Ok(m)
}

/// The bundle spanned by the images of `fiber_projectors[g]` (one
/// projector per group element, each already restricted to the subspace of
/// interest), with G acting through the ambient matrices `action`.
pub fn bundle_from_image(
    group: &Arc<FiniteGroup>,
    action: &[Mat],
    fiber_projectors: &[Mat],
) -> Result<EquivariantBundle> {
    let n = group.order();
    let amb = action.first().map_or(0, |m| m.rows);
    let mut cols: Vec<crate::linalg::SparseVec<Cyclo>> = Vec::new();
    let mut grade = Vec::new();
    for (x, p) in fiber_projectors.iter().enumerate().take(n) {
        for c in p.independent_columns() {
            cols.push(p.column(c));
            grade.push(x);
        }
    }
    let basis = Mat::from_columns(amb, &cols);
    let act = action
        .iter()
        .map(|a| {
            crate::linalg::coordinates(&basis, &a.mul(&basis))
                .ok_or_else(|| Error::BadBundle("image is not invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    EquivariantBundle::new(group.clone(), grade, act)
}

/// Matrix of an element of D(G)⊗D(G) (basis index a·|G|² + b) on V⊗W.
pub fn d2_action(v: &EquivariantBundle, w: &EquivariantBundle, x: &QVec) -> Mat {
    let dd = v.group.order() * v.group.order();
    let mut out = Mat::zeros(v.dim() * w.dim(), v.dim() * w.dim());
    for (idx, c) in x {
        let ma = v.d_action(&vec![(idx / dd, c.clone())]);
        let mb = w.d_action(&vec![(idx % dd, num_traits::One::one())]);
        out = out.add(&ma.kron(&mb));
    }
    out
}

/// Δ(1)·(V⊗W) as a bundle, built purely from the algebra side: fibers are the
/// images of Δ(e⊗δ_x), and G acts through Δ(g).
pub fn coproduct_module(
    coproduct: &crate::algebra::AlgebraMap,
    v: &EquivariantBundle,
    w: &EquivariantBundle,
) -> Result<EquivariantBundle> {
    same_group(&v.group, &w.group)?;
    let g = &v.group;
    let n = g.order();
    let projs: Vec<Mat> = (0..n).map(|x| d2_action(v, w, &coproduct.images[dg_index(n, g.identity(), x)])).collect();
    let action: Vec<Mat> = (0..n)
        .map(|h| {
            let gh: QVec = normalize_sparse((0..n).map(|k| (dg_index(n, h, k), num_traits::One::one())).collect());
            d2_action(v, w, &coproduct.apply(&gh))
        })
        .collect();
    bundle_from_image(g, &action, &projs)
}

/// Bundle JSON: {"group", "fibers": {g: dim}, "grade": [g per basis vector],
/// "action": {h: matrix}}.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct BundleJson {
    pub group: String,
    pub fibers: std::collections::BTreeMap<String, usize>,
    pub grade: Vec<usize>,
    pub action: std::collections::BTreeMap<String, Vec<Vec<Cyclo>>>,
}

impl EquivariantBundle {
    pub fn to_json(&self, group_name: &str) -> BundleJson {
        BundleJson {
            group: group_name.into(),
            fibers: self
                .fiber_dims()
                .into_iter()
                .enumerate()
                .filter(|(_, d)| *d > 0)
                .map(|(g, d)| (g.to_string(), d))
                .collect(),
            grade: self.grade.clone(),
            action: self.action.iter().enumerate().map(|(h, m)| (h.to_string(), m.to_rows())).collect(),
        }
    }

    pub fn from_json(j: &BundleJson, group: Arc<FiniteGroup>) -> Result<Self> {
        let d = j.grade.len();
        let action = (0..group.order())
            .map(|h| {
                let rows =
                    j.action.get(&h.to_string()).ok_or_else(|| Error::BadBundle(format!("no action for {h}")))?;
                if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                    return Err(Error::BadBundle(format!("action({h}) has wrong shape")));
                }
                Ok(if d == 0 { Mat::zeros(0, 0) } else { Mat::from_rows(rows.clone()) })
            })
            .collect::<Result<Vec<_>>>()?;
        let b = EquivariantBundle::new(group, j.grade.clone(), action)?;
        let declared: Vec<(String, usize)> = j.fibers.iter().map(|(k, v)| (k.clone(), *v)).collect();
        let actual: Vec<(String, usize)> = b.to_json(&j.group).fibers.into_iter().collect();
        if declared != actual {
            return Err(Error::BadBundle("fiber dimensions disagree with grades".into()));
        }
        Ok(b)
    }
}
