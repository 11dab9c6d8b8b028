//! Algebras given by structure constants over ℚ: the Drinfeld double D(G),
//! the elliptic double D^el(G) and its torus part D_{T²}(G), together with
//! the coproducts Δ̄, Δ̄_z and the automorphism λ.
//!
//! Center dimensions are computed over ℚ; they do not change under scalar
//! extension, so they count simple modules over any splitting field.

use crate::group::FiniteGroup;
use crate::linalg::{axpy, normalize_sparse, Echelon, SparseVec};
use crate::scalar::{q, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type QVec = SparseVec<Q>;

/// A finite-dimensional associative algebra with a distinguished basis.
pub trait Algebra {
    fn dim(&self) -> usize;
    fn mul_basis(&self, a: usize, b: usize) -> QVec;
    fn unit(&self) -> QVec;

    fn mul(&self, x: &QVec, y: &QVec) -> QVec {
        let mut acc: Vec<(usize, Q)> = Vec::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let c = ca * cb;
                for (k, v) in self.mul_basis(*a, *b) {
                    acc.push((k, &v * &c));
                }
            }
        }
        normalize_sparse(acc)
    }
}

pub fn basis_vec(i: usize) -> QVec {
    vec![(i, Q::one())]
}

pub fn add(x: &QVec, y: &QVec) -> QVec {
    axpy(x, &Q::one(), y)
}

pub fn sub(x: &QVec, y: &QVec) -> QVec {
    axpy(x, &(-Q::one()), y)
}

pub fn scale(x: &QVec, c: &Q) -> QVec {
    if c.is_zero() {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, v * c)).collect()
}

/// Explicit structure constants.
#[derive(Clone, Debug)]
pub struct StructAlgebra {
    pub name: String,
    pub labels: Vec<String>,
    dim: usize,
    table: Vec<QVec>,
    unit: QVec,
}

impl StructAlgebra {
    pub fn from_fn(name: &str, labels: Vec<String>, unit: QVec, f: impl Fn(usize, usize) -> QVec) -> Self {
        let dim = labels.len();
        let mut table = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                table.push(f(a, b));
            }
        }
        StructAlgebra { name: name.into(), labels, dim, table, unit }
    }

    /// Associativity on basis triples: exhaustive up to `exhaustive_limit`
    /// in dimension, otherwise `samples` seeded random triples. Returns the
    /// first failing triple.
    pub fn check_associativity(&self, exhaustive_limit: usize, samples: usize) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let test = |a: usize, b: usize, c: usize| {
            let l = self.mul(&self.table[a * n + b], &basis_vec(c));
            let r = self.mul(&basis_vec(a), &self.table[b * n + c]);
            l == r
        };
        if n <= exhaustive_limit {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !test(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xbb67ae8584caa73b);
            for _ in 0..samples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !test(a, b, c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    /// Unit is a two-sided identity on every basis element.
    pub fn check_unit(&self) -> bool {
        (0..self.dim).all(|a| {
            let e = basis_vec(a);
            self.mul(&self.unit, &e) == e && self.mul(&e, &self.unit) == e
        })
    }

    pub fn is_central(&self, x: &QVec) -> bool {
        (0..self.dim).all(|a| {
            let e = basis_vec(a);
            self.mul(x, &e) == self.mul(&e, x)
        })
    }
}

impl Algebra for StructAlgebra {
    fn dim(&self) -> usize {
        self.dim
    }
    fn mul_basis(&self, a: usize, b: usize) -> QVec {
        self.table[a * self.dim + b].clone()
    }
    fn unit(&self) -> QVec {
        self.unit.clone()
    }
}

/// k[G].
pub fn group_algebra(g: &FiniteGroup) -> StructAlgebra {
    let labels = (0..g.order()).map(|x| format!("g{x}")).collect();
    StructAlgebra::from_fn("k[G]", labels, basis_vec(g.identity()), |a, b| basis_vec(g.mul(a, b)))
}

/// Index of g⊗δ_h in D(G).
#[inline]
pub fn dg_index(n: usize, g: usize, h: usize) -> usize {
    g * n + h
}

/// D(G) with basis g⊗δ_h and
/// (g₁⊗δ_{h₁})(g₂⊗δ_{h₂}) = [g₂⁻¹h₁g₂ = h₂] g₁g₂⊗δ_{h₂}.
pub fn drinfeld_double(g: &FiniteGroup) -> StructAlgebra {
    let n = g.order();
    let labels = (0..n * n).map(|i| format!("g{}⊗δ{}", i / n, i % n)).collect();
    let unit = (0..n).map(|h| (dg_index(n, g.identity(), h), Q::one())).collect();
    StructAlgebra::from_fn("D(G)", labels, unit, |a, b| {
        let (g1, h1, g2, h2) = (a / n, a % n, b / n, b % n);
        if g.conj(g.inv(g2), h1) == h2 {
            basis_vec(dg_index(n, g.mul(g1, g2), h2))
        } else {
            Vec::new()
        }
    })
}

/// The R-matrix Σ_g g⊗δ_g as an element of D(G)⊗D(G) written as pairs of
/// D(G) basis indices (g⊗δ_* , e⊗δ_g).
pub fn r_matrix(g: &FiniteGroup) -> Vec<(QVec, QVec)> {
    let n = g.order();
    (0..n)
        .map(|x| {
            let gx: QVec = (0..n).map(|h| (dg_index(n, x, h), Q::one())).collect();
            (gx, basis_vec(dg_index(n, g.identity(), x)))
        })
        .collect()
}

/// Index of g⊗δ_{h₁}⊗δ_{h₂} in D^el(G).
#[inline]
pub fn el_index(n: usize, g: usize, h1: usize, h2: usize) -> usize {
    (g * n + h1) * n + h2
}

/// Product rule of the elliptic double, in the same convention as D(G):
/// (g⊗δ_{h₁}⊗δ_{h₂})(g′⊗δ_{h₁′}⊗δ_{h₂′}) =
/// [g′⁻¹h₁g′ = h₁′][g′⁻¹h₂g′ = h₂′] gg′⊗δ_{h₁′}⊗δ_{h₂′}.
fn el_product(g: &FiniteGroup, a: (usize, usize, usize), b: (usize, usize, usize)) -> Option<(usize, usize, usize)> {
    let gi = g.inv(b.0);
    (g.conj(gi, a.1) == b.1 && g.conj(gi, a.2) == b.2).then(|| (g.mul(a.0, b.0), b.1, b.2))
}

/// The elliptic-double rule with the conjugation placed literally on the
/// second factor's indices; kept to document that it is not associative for
/// non-abelian G.
pub fn elliptic_double_literal(g: &FiniteGroup) -> StructAlgebra {
    let n = g.order();
    let labels = (0..n * n * n).map(|i| format!("e{i}")).collect();
    let unit = (0..n * n).map(|i| (el_index(n, g.identity(), i / n, i % n), Q::one())).collect();
    StructAlgebra::from_fn("D^el(G) literal", labels, unit, |a, b| {
        let (g1, h1, k1) = (a / (n * n), (a / n) % n, a % n);
        let (g2, h2, k2) = (b / (n * n), (b / n) % n, b % n);
        let gi = g.inv(g2);
        if h1 == g.conj(gi, h2) && k1 == g.conj(gi, k2) {
            basis_vec(el_index(n, g.mul(g1, g2), h1, k1))
        } else {
            Vec::new()
        }
    })
}

/// D^el(G) = k[G]⊗F(G)⊗F(G), dim |G|³.
pub fn elliptic_double(g: &FiniteGroup) -> StructAlgebra {
    let n = g.order();
    let labels = (0..n * n * n).map(|i| format!("g{}⊗δ{}⊗δ{}", i / (n * n), (i / n) % n, i % n)).collect();
    let unit = (0..n * n).map(|i| (el_index(n, g.identity(), i / n, i % n), Q::one())).collect();
    StructAlgebra::from_fn("D^el(G)", labels, unit, |a, b| {
        let t = |x: usize| (x / (n * n), (x / n) % n, x % n);
        el_product(g, t(a), t(b)).map_or(Vec::new(), |(x, y, z)| basis_vec(el_index(n, x, y, z)))
    })
}

/// D_{T²}(G) = D^el(G)·δ_Ω with basis g⊗δ_{(h,h′)} over commuting pairs.
pub fn torus_subalgebra(g: &FiniteGroup) -> StructAlgebra {
    let omega = g.commuting_pairs().pairs;
    let pos: BTreeMap<(usize, usize), usize> = omega.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let w = omega.len();
    let n = g.order();
    let labels = (0..n * w).map(|i| format!("g{}⊗δ{:?}", i / w, omega[i % w])).collect();
    let unit = (0..w).map(|i| (g.identity() * w + i, Q::one())).collect();
    StructAlgebra::from_fn("D_T2(G)", labels, unit, |a, b| {
        let (pa, pb) = (omega[a % w], omega[b % w]);
        el_product(g, (a / w, pa.0, pa.1), (b / w, pb.0, pb.1))
            .map_or(Vec::new(), |(x, y, z)| basis_vec(x * w + pos[&(y, z)]))
    })
}

/// δ_Ω inside D^el(G).
pub fn delta_omega(g: &FiniteGroup) -> QVec {
    let n = g.order();
    let mut v: Vec<(usize, Q)> =
        g.commuting_pairs().pairs.iter().map(|&(h, k)| (el_index(n, g.identity(), h, k), Q::one())).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// dim Z(A) = dim {x : xa = ax for every basis a}, by exact elimination.
pub fn center_dimension(a: &dyn Algebra) -> usize {
    let n = a.dim();
    let mut ech: Echelon<Q> = Echelon::new(n);
    for x in 0..n {
        // row (x, c): Σ_b u_b [coefficient of c in b·x − x·b]
        let mut rows: BTreeMap<usize, Vec<(usize, Q)>> = BTreeMap::new();
        for b in 0..n {
            for (c, v) in a.mul_basis(b, x) {
                rows.entry(c).or_default().push((b, v));
            }
            for (c, v) in a.mul_basis(x, b) {
                rows.entry(c).or_default().push((b, -v));
            }
        }
        for (_, r) in rows {
            let r = normalize_sparse(r);
            if !r.is_empty() {
                ech.insert(r);
            }
        }
    }
    n - ech.rank()
}

/// D(G)⊗D(G) (or any A⊗A) with the componentwise product, computed on the fly.
pub struct TensorSquare<'a, A: Algebra> {
    pub base: &'a A,
}

impl<A: Algebra> TensorSquare<'_, A> {
    pub fn index(&self, a: usize, b: usize) -> usize {
        a * self.base.dim() + b
    }
    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.base.dim(), i % self.base.dim())
    }
    /// x⊗y for elements of the base algebra.
    pub fn pure(&self, x: &QVec, y: &QVec) -> QVec {
        let mut out = Vec::with_capacity(x.len() * y.len());
        for (a, ca) in x {
            for (b, cb) in y {
                out.push((self.index(*a, *b), ca * cb));
            }
        }
        normalize_sparse(out)
    }
}

impl<A: Algebra> Algebra for TensorSquare<'_, A> {
    fn dim(&self) -> usize {
        self.base.dim() * self.base.dim()
    }
    fn mul_basis(&self, i: usize, j: usize) -> QVec {
        let (a, b) = self.split(i);
        let (c, d) = self.split(j);
        self.pure(&self.base.mul_basis(a, c), &self.base.mul_basis(b, d))
    }
    fn unit(&self) -> QVec {
        self.pure(&self.base.unit(), &self.base.unit())
    }
}

/// A linear map between algebras given by the images of basis elements.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub images: Vec<QVec>,
}

impl AlgebraMap {
    pub fn apply(&self, x: &QVec) -> QVec {
        let mut acc = Vec::new();
        for (i, c) in x {
            for (k, v) in &self.images[*i] {
                acc.push((*k, v * c));
            }
        }
        normalize_sparse(acc)
    }

    pub fn compose(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            source_dim: first.source_dim,
            target_dim: self.target_dim,
            images: first.images.iter().map(|x| self.apply(x)).collect(),
        }
    }

    /// f(ab) = f(a)f(b) on every pair of basis elements; first failure.
    pub fn check_multiplicative(&self, src: &dyn Algebra, tgt: &dyn Algebra) -> Option<(usize, usize)> {
        for a in 0..src.dim() {
            for b in 0..src.dim() {
                let lhs = self.apply(&src.mul_basis(a, b));
                let rhs = tgt.mul(&self.images[a], &self.images[b]);
                if lhs != rhs {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim == self.target_dim && self.images.iter().enumerate().all(|(i, x)| *x == basis_vec(i))
    }

    /// f ⊗ f on A⊗A (basis indices a·dim + b).
    pub fn tensor_square(&self) -> AlgebraMap {
        let (s, t) = (self.source_dim, self.target_dim);
        let mut images = Vec::with_capacity(s * s);
        for a in 0..s {
            for b in 0..s {
                let mut out = Vec::new();
                for (i, x) in &self.images[a] {
                    for (j, y) in &self.images[b] {
                        out.push((i * t + j, x * y));
                    }
                }
                images.push(normalize_sparse(out));
            }
        }
        AlgebraMap { source_dim: s * s, target_dim: t * t, images }
    }
}

/// g⊗δ_* (the group element g inside D(G)).
pub fn dg_group_element(g: &FiniteGroup, x: usize) -> QVec {
    let n = g.order();
    (0..n).map(|h| (dg_index(n, x, h), Q::one())).collect()
}

/// e^σ·δ_x = (e⊗δ_x + (−1)^σ z⊗δ_x)/2: parity projection by left
/// multiplication with (1 ± z)/2 inside D(G).
pub fn delta_parity_left(g: &FiniteGroup, sigma: u8, x: usize) -> QVec {
    let n = g.order();
    let z = g.z_or_identity();
    let s = if sigma.is_multiple_of(2) { q(1, 2) } else { q(-1, 2) };
    normalize_sparse(vec![(dg_index(n, g.identity(), x), q(1, 2)), (dg_index(n, z, x), s)])
}

/// (δ_x + (−1)^σ δ_{xz})/2: parity projection of the z-action on F(G)
/// itself. Not to be confused with [`delta_parity_left`].
pub fn delta_parity_functions(g: &FiniteGroup, sigma: u8, x: usize) -> QVec {
    let n = g.order();
    let xz = g.mul(x, g.z_or_identity());
    let s = if sigma.is_multiple_of(2) { q(1, 2) } else { q(-1, 2) };
    normalize_sparse(vec![(dg_index(n, g.identity(), x), q(1, 2)), (dg_index(n, g.identity(), xz), s)])
}

/// Δ̄: g ↦ g⊗g, δ_h ↦ δ_h⊗δ_h.
pub fn coproduct_bar(g: &FiniteGroup) -> AlgebraMap {
    let n = g.order();
    let dim = n * n;
    let images = (0..dim).map(|i| basis_vec(i * dim + i)).collect();
    AlgebraMap { source_dim: dim, target_dim: dim * dim, images }
}

/// Δ̄_z: g ↦ g⊗g, δ_h ↦ Σ_{σ,τ} δ^σ_{hz^τ}⊗δ^τ_{hz^σ}. With no z this is Δ̄.
pub fn coproduct_bar_z(g: &FiniteGroup) -> crate::error::Result<AlgebraMap> {
    let z = g.z().ok_or(crate::error::Error::ZMissing)?;
    let d = drinfeld_double(g);
    let sq = TensorSquare { base: &d };
    let n = g.order();
    let zp = |k: u8| if k == 0 { g.identity() } else { z };
    let images = (0..n * n)
        .map(|i| {
            let (x, h) = (i / n, i % n);
            let mut dz: QVec = Vec::new();
            for s in 0..2u8 {
                for t in 0..2u8 {
                    let l = delta_parity_left(g, s, g.mul(h, zp(t)));
                    let r = delta_parity_left(g, t, g.mul(h, zp(s)));
                    dz = add(&dz, &sq.pure(&l, &r));
                }
            }
            let gx = dg_group_element(g, x);
            sq.mul(&sq.pure(&gx, &gx), &dz)
        })
        .collect();
    Ok(AlgebraMap { source_dim: n * n, target_dim: n * n * n * n, images })
}

/// λ: g ↦ g, δ_h ↦ δ_h⁰ + δ_{hz}¹.
pub fn lambda_automorphism(g: &FiniteGroup) -> crate::error::Result<AlgebraMap> {
    let z = g.z().ok_or(crate::error::Error::ZMissing)?;
    let d = drinfeld_double(g);
    let n = g.order();
    let images = (0..n * n)
        .map(|i| {
            let (x, h) = (i / n, i % n);
            let l = add(&delta_parity_left(g, 0, h), &delta_parity_left(g, 1, g.mul(h, z)));
            d.mul(&dg_group_element(g, x), &l)
        })
        .collect();
    Ok(AlgebraMap { source_dim: n * n, target_dim: n * n, images })
}

/// The three independent counts of simple D_{T²}(G)-modules.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct TorusCheck {
    /// center_dimension(D_{T²}(G)).
    pub lhs: usize,
    /// Σ over classes of center_dimension(D(Z(g))).
    pub rhs: usize,
    /// Σ over diagonal orbits on Ω of #classes(stabilizer).
    pub orbit_count: usize,
    pub equal: bool,
}

pub fn torus_center_check(g: &FiniteGroup) -> TorusCheck {
    let lhs = center_dimension(&torus_subalgebra(g));
    let rhs = g
        .conjugacy_classes()
        .iter()
        .map(|c| center_dimension(&drinfeld_double(&g.centralizer(c.representative).group)))
        .sum();
    let orbit_count = g
        .diagonal_orbits(&g.commuting_pairs())
        .iter()
        .map(|o| crate::group::Subgroup::new(g, o.stabilizer.clone()).expect("stabilizer").group.num_classes())
        .sum();
    TorusCheck { lhs, rhs, orbit_count, equal: lhs == rhs && rhs == orbit_count }
}
