//! Finite-dimensional representations of a finite group over ℚ(ζ_M).

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{null_space, Mat, SparseVec};
use crate::scalar::Cyclo;
use std::sync::Arc;

/// A representation storing the matrix of every group element.
#[derive(Clone, Debug)]
pub struct GModule {
    pub group: Arc<FiniteGroup>,
    pub dim: usize,
    pub rho: Vec<Mat>,
}

impl PartialEq for GModule {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && *self.group == *o.group && self.rho == o.rho
    }
}

pub(crate) fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch)
    }
}

impl GModule {
    /// Extend generator images multiplicatively, checking consistency.
    pub fn from_generators(group: Arc<FiniteGroup>, images: &[(usize, Mat)]) -> Result<GModule> {
        let dim = images.first().map_or(0, |(_, m)| m.rows);
        if dim == 0 && !images.is_empty() {
            return Err(Error::ShapeMismatch("empty generator matrix".into()));
        }
        for (g, m) in images {
            if m.rows != dim || m.cols != dim || *g >= group.order() {
                return Err(Error::ShapeMismatch(format!("generator {g}")));
            }
        }
        let n = group.order();
        let mut rho: Vec<Option<Mat>> = vec![None; n];
        rho[group.identity()] = Some(Mat::identity(dim));
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for (s, ms) in images {
                let y = group.mul(x, *s);
                let my = rho[x].as_ref().unwrap().mul(ms);
                match &rho[y] {
                    Some(old) if *old != my => {
                        return Err(Error::NotAHomomorphism(format!("inconsistent image at element {y}")))
                    }
                    Some(_) => {}
                    None => {
                        rho[y] = Some(my);
                        frontier.push(y);
                    }
                }
            }
        }
        let rho: Option<Vec<Mat>> = rho.into_iter().collect();
        let rho = rho.ok_or_else(|| Error::NotAHomomorphism("generators do not generate the group".into()))?;
        Ok(GModule { group, dim, rho })
    }

    /// From matrices for all elements; validated on every pair.
    pub fn from_matrices(group: Arc<FiniteGroup>, rho: Vec<Mat>) -> Result<GModule> {
        let dim = rho.first().map_or(0, |m| m.rows);
        let m = GModule { group, dim, rho };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.rho.len() != g.order() {
            return Err(Error::ShapeMismatch("one matrix per element expected".into()));
        }
        for (i, m) in self.rho.iter().enumerate() {
            if m.rows != self.dim || m.cols != self.dim {
                return Err(Error::ShapeMismatch(format!("matrix of element {i}")));
            }
        }
        if !self.rho[g.identity()].is_identity() && self.dim > 0 {
            return Err(Error::NotAHomomorphism("identity not sent to identity".into()));
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.rho[a].mul(&self.rho[b]) != self.rho[g.mul(a, b)] {
                    return Err(Error::NotAHomomorphism(format!("ρ({a})ρ({b}) ≠ ρ({a}·{b})")));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> GModule {
        let n = group.order();
        GModule { group, dim: 1, rho: vec![Mat::identity(1); n] }
    }

    /// One-dimensional representation from character values.
    pub fn character(group: Arc<FiniteGroup>, values: Vec<Cyclo>) -> Result<GModule> {
        GModule::from_matrices(group, values.into_iter().map(|v| Mat::from_rows(vec![vec![v]])).collect())
    }

    /// Left regular representation on k[G]: ρ(g)e_h = e_{gh}.
    pub fn regular(group: Arc<FiniteGroup>) -> GModule {
        let n = group.order();
        let rho = (0..n)
            .map(|g| {
                let mut m = Mat::zeros(n, n);
                for h in 0..n {
                    m.set(group.mul(g, h), h, Cyclo::one());
                }
                m
            })
            .collect();
        GModule { group, dim: n, rho }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> GModule {
        let n = group.order();
        GModule { group, dim: 0, rho: vec![Mat::zeros(0, 0); n] }
    }

    pub fn tensor(&self, w: &GModule) -> Result<GModule> {
        same_group(&self.group, &w.group)?;
        Ok(GModule {
            group: self.group.clone(),
            dim: self.dim * w.dim,
            rho: self.rho.iter().zip(&w.rho).map(|(a, b)| a.kron(b)).collect(),
        })
    }

    /// ρ*(g) = ρ(g⁻¹)ᵀ.
    pub fn dual(&self) -> GModule {
        let g = &self.group;
        GModule {
            group: g.clone(),
            dim: self.dim,
            rho: (0..g.order()).map(|x| self.rho[g.inv(x)].transpose()).collect(),
        }
    }

    pub fn direct_sum(&self, w: &GModule) -> Result<GModule> {
        same_group(&self.group, &w.group)?;
        Ok(GModule {
            group: self.group.clone(),
            dim: self.dim + w.dim,
            rho: self.rho.iter().zip(&w.rho).map(|(a, b)| a.direct_sum(b)).collect(),
        })
    }

    pub fn tensor_all(list: &[GModule]) -> Result<GModule> {
        let (first, rest) = list.split_first().ok_or_else(|| Error::ShapeMismatch("empty list".into()))?;
        rest.iter().try_fold(first.clone(), |acc, m| acc.tensor(m))
    }

    /// Same representation with every entry lifted to conductor `m`.
    pub fn lift(&self, m: u32) -> Result<GModule> {
        let rho = self
            .rho
            .iter()
            .map(|a| {
                let data = a.data.iter().map(|x| x.conductor_lift(m)).collect::<Result<Vec<_>>>()?;
                Ok(Mat { rows: a.rows, cols: a.cols, data })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GModule { group: self.group.clone(), dim: self.dim, rho })
    }

    /// Character χ(g) = tr ρ(g).
    pub fn character_values(&self) -> Vec<Cyclo> {
        self.rho.iter().map(|m| m.trace()).collect()
    }

    /// Matrix of the group-algebra element Σ c_g g.
    pub fn act_element(&self, coeffs: &[(usize, Cyclo)]) -> Mat {
        let mut out = Mat::zeros(self.dim, self.dim);
        for (g, c) in coeffs {
            out = out.add(&self.rho[*g].scale(c));
        }
        out
    }
}

/// Equations `A X − X B = 0` for unknown `X` (rows × cols, row-major index),
/// restricted to the unknowns allowed by `mask` (None = all).
pub(crate) fn commutation_rows(
    a: &Mat,
    b: &Mat,
    rows: usize,
    cols: usize,
    var: &dyn Fn(usize, usize) -> Option<usize>,
) -> Vec<SparseVec<Cyclo>> {
    let mut eqs = Vec::with_capacity(rows * cols);
    let a_cols: Vec<SparseVec<Cyclo>> = (0..rows).map(|i| a.row_sparse(i)).collect();
    let b_cols: Vec<SparseVec<Cyclo>> = (0..cols).map(|j| b.column(j)).collect();
    for i in 0..rows {
        for j in 0..cols {
            let mut row = Vec::new();
            for (k, x) in &a_cols[i] {
                if let Some(v) = var(*k, j) {
                    row.push((v, x.clone()));
                }
            }
            for (k, x) in &b_cols[j] {
                if let Some(v) = var(i, *k) {
                    row.push((v, x.neg()));
                }
            }
            let row = crate::linalg::normalize_sparse(row);
            if !row.is_empty() {
                eqs.push(row);
            }
        }
    }
    eqs
}

/// Basis of Hom_G(V, W) (matrices dim W × dim V).
pub fn intertwiner_space(v: &GModule, w: &GModule) -> Result<Vec<Mat>> {
    same_group(&v.group, &w.group)?;
    let (r, c) = (w.dim, v.dim);
    if r == 0 || c == 0 {
        return Ok(Vec::new());
    }
    let var = |i: usize, j: usize| Some(i * c + j);
    let mut eqs = Vec::new();
    for &s in v.group.generators() {
        eqs.extend(commutation_rows(&w.rho[s], &v.rho[s], r, c, &var));
    }
    Ok(null_space(r * c, eqs)
        .into_iter()
        .map(|x| {
            let mut m = Mat::zeros(r, c);
            for (idx, val) in x {
                m.set(idx / c, idx % c, val);
            }
            m
        })
        .collect())
}

/// Fixed vectors of V (as dense coordinate vectors).
pub fn invariant_vectors(v: &GModule) -> Vec<Vec<Cyclo>> {
    let n = v.dim;
    let mut eqs = Vec::new();
    for &s in v.group.generators() {
        let d = v.rho[s].sub(&Mat::identity(n));
        for i in 0..n {
            let r = d.row_sparse(i);
            if !r.is_empty() {
                eqs.push(r);
            }
        }
    }
    null_space(n, eqs)
        .into_iter()
        .map(|x| {
            let mut d = vec![Cyclo::zero(); n];
            for (i, val) in x {
                d[i] = val;
            }
            d
        })
        .collect()
}

/// Permute a tensor coordinate vector from V₁⊗…⊗Vₙ order to Vₙ⊗…⊗V₁ order.
pub fn reverse_tensor_order(x: &[Cyclo], dims: &[usize]) -> Vec<Cyclo> {
    let total: usize = dims.iter().product();
    assert_eq!(x.len(), total);
    let mut out = vec![Cyclo::zero(); total];
    let mut digits = vec![0usize; dims.len()];
    for (idx, val) in x.iter().enumerate() {
        let mut r = idx;
        for k in (0..dims.len()).rev() {
            digits[k] = r % dims[k];
            r /= dims[k];
        }
        let mut j = 0;
        for k in (0..dims.len()).rev() {
            j = j * dims[k] + digits[k];
        }
        out[j] = val.clone();
    }
    out
}

/// Invariant-vector bases.
#[derive(Clone, Debug)]
pub struct DualBases {
    /// Basis φ_α of ⟨V₁,…,Vₙ⟩ = Hom(1, V₁⊗…⊗Vₙ), as coordinate vectors.
    pub basis: Vec<Vec<Cyclo>>,
    /// Dual basis φ^α of ⟨Vₙ*,…,V₁*⟩, coordinates in Vₙ*⊗…⊗V₁*.
    pub dual: Vec<Vec<Cyclo>>,
    pub dims: Vec<usize>,
}

impl DualBases {
    /// The pairing matrix ev(φ^α ⊗ φ_β): contract nested evaluations.
    pub fn pairing(&self) -> Mat {
        let k = self.basis.len();
        let mut p = Mat::zeros(k, k);
        for (a, psi) in self.dual.iter().enumerate() {
            let psi = reverse_tensor_order(psi, &self.dims.iter().rev().copied().collect::<Vec<_>>());
            for (b, phi) in self.basis.iter().enumerate() {
                let s = psi.iter().zip(phi).fold(Cyclo::zero(), |s, (x, y)| s + x * y);
                p.set(a, b, s);
            }
        }
        p
    }
}

/// Bases of ⟨V₁,…,Vₙ⟩ and ⟨Vₙ*,…,V₁*⟩ dual under post-composition with
/// evaluation maps.
pub fn invariants_and_dual_basis(list: &[GModule]) -> Result<DualBases> {
    let t = GModule::tensor_all(list)?;
    let dims: Vec<usize> = list.iter().map(|m| m.dim).collect();
    let basis = invariant_vectors(&t);
    let funcs = invariant_vectors(&t.dual());
    if funcs.len() != basis.len() {
        return Err(Error::DegeneratePairing);
    }
    let k = basis.len();
    let mut p = Mat::zeros(k, k);
    for (a, psi) in funcs.iter().enumerate() {
        for (b, phi) in basis.iter().enumerate() {
            p.set(a, b, psi.iter().zip(phi).fold(Cyclo::zero(), |s, (x, y)| s + x * y));
        }
    }
    let pinv = p.inverse().ok_or(Error::DegeneratePairing)?;
    let dual = (0..k)
        .map(|a| {
            let mut v = vec![Cyclo::zero(); t.dim];
            for (b, psi) in funcs.iter().enumerate() {
                let c = pinv.get(a, b);
                if c.is_zero() {
                    continue;
                }
                for (i, x) in psi.iter().enumerate() {
                    if !x.is_zero() {
                        v[i] += &(c * x);
                    }
                }
            }
            reverse_tensor_order(&v, &dims).into_iter().collect::<Vec<_>>()
        })
        .collect::<Vec<_>>();
    let out = DualBases { basis, dual, dims };
    if !out.pairing().is_identity() && k > 0 {
        return Err(Error::DegeneratePairing);
    }
    Ok(out)
}

/// A complete list of irreducible representations of one group.
#[derive(Clone, Debug)]
pub struct IrrepZoo {
    pub group: Arc<FiniteGroup>,
    pub labels: Vec<String>,
    pub irreps: Vec<GModule>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ZooReport {
    pub pass: bool,
    pub sum_of_squares: usize,
    pub group_order: usize,
    pub failures: Vec<String>,
}

impl IrrepZoo {
    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|x| x.dim).collect()
    }
    pub fn max_dim(&self) -> usize {
        self.dims().into_iter().max().unwrap_or(1)
    }
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
    pub fn lift(&self, m: u32) -> Result<IrrepZoo> {
        Ok(IrrepZoo {
            group: self.group.clone(),
            labels: self.labels.clone(),
            irreps: self.irreps.iter().map(|x| x.lift(m)).collect::<Result<_>>()?,
        })
    }
    /// Index of the dual irrep (matched by character).
    pub fn dual_index(&self, i: usize) -> Option<usize> {
        let chi = self.irreps[i].dual().character_values();
        self.irreps.iter().position(|x| x.character_values() == chi)
    }
}

/// Check Σd² = |G|, that every entry is a representation, that the first
/// label is trivial, and Schur orthogonality of Hom spaces.
pub fn zoo_validate(zoo: &IrrepZoo) -> ZooReport {
    let mut failures = Vec::new();
    let n = zoo.group.order();
    let sum_of_squares = zoo.irreps.iter().map(|x| x.dim * x.dim).sum();
    for (l, x) in zoo.labels.iter().zip(&zoo.irreps) {
        if *x.group != *zoo.group {
            failures.push(format!("{l}: wrong group"));
        } else if let Err(e) = x.validate() {
            failures.push(format!("{l}: {e}"));
        }
    }
    if zoo.labels.len() != zoo.irreps.len() {
        failures.push("label count differs from irrep count".into());
    }
    if !failures.is_empty() {
        return ZooReport { pass: false, sum_of_squares, group_order: n, failures };
    }
    match zoo.irreps.first() {
        Some(x) if *x == GModule::trivial(zoo.group.clone()) => {}
        _ => failures.push("first irrep is not the trivial representation".into()),
    }
    if sum_of_squares != n {
        failures.push(format!("sum of squared dims {sum_of_squares} ≠ |G| = {n}"));
    }
    'outer: for i in 0..zoo.irreps.len() {
        for j in 0..zoo.irreps.len() {
            let d = intertwiner_space(&zoo.irreps[i], &zoo.irreps[j]).map(|b| b.len()).unwrap_or(usize::MAX);
            let want = usize::from(i == j);
            if d != want {
                failures.push(format!("dim Hom({}, {}) = {d}, expected {want}", zoo.labels[i], zoo.labels[j]));
                break 'outer;
            }
        }
    }
    ZooReport { pass: failures.is_empty(), sum_of_squares, group_order: n, failures }
}

/// Session conductor lcm(exp G, 4|G|, 4·max d).
pub fn session_conductor(group: &FiniteGroup, max_dim: usize) -> u32 {
    let e = group.exponent();
    num_integer::lcm(num_integer::lcm(e, 4 * group.order()), 4 * max_dim.max(1)) as u32
}
