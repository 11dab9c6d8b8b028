//! Finite groups given by multiplication tables.
//!
//! Elements are dense indices `0..n`. Conjugacy classes, a generating set
//! and the inverse table are computed once at construction; everything
//! else is derived on demand.

use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// How associativity was verified when the group was built.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssocCheck {
    Exhaustive,
    Sampled { triples: usize },
}

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: usize,
    /// Sorted.
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingPairs {
    /// Sorted lexicographically.
    pub pairs: Vec<(usize, usize)>,
}

/// An orbit of simultaneous conjugation on a set of pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOrbit {
    /// Sorted; the first member is the orbit representative.
    pub members: Vec<(usize, usize)>,
    /// Stabilizer of the representative, sorted.
    pub stabilizer: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<usize>,
    identity: usize,
    z: Option<usize>,
    assoc: AssocCheck,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.mul == other.mul && self.z == other.z
    }
}
impl Eq for FiniteGroup {}

/// Validate a multiplication table and build the group.
pub fn group_from_table(table: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::BadTable("empty table".into()));
    }
    let mut mul = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::BadTable(format!("row {i} has length {}", row.len())));
        }
        for &x in row {
            if x >= n {
                return Err(Error::BadTable(format!("entry {x} out of range in row {i}")));
            }
            mul.push(x as u32);
        }
    }
    let m = |a: usize, b: usize| mul[a * n + b] as usize;
    let identity = (0..n).find(|&e| (0..n).all(|g| m(e, g) == g && m(g, e) == g)).ok_or(Error::NoIdentity)?;
    let mut inv = vec![usize::MAX; n];
    for g in 0..n {
        inv[g] = (0..n).find(|&h| m(g, h) == identity && m(h, g) == identity).ok_or(Error::NoInverse(g))?;
    }
    let assoc = if n <= EXHAUSTIVE_ASSOC_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        AssocCheck::Exhaustive
    } else {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6a09e667f3bcc908);
        let triples = 10 * n * n;
        for _ in 0..triples {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if m(m(a, b), c) != m(a, m(b, c)) {
                return Err(Error::NotAssociative(a, b, c));
            }
        }
        AssocCheck::Sampled { triples }
    };
    let mut g = FiniteGroup {
        n,
        mul,
        inv,
        identity,
        z: None,
        assoc,
        classes: Vec::new(),
        class_of: Vec::new(),
        generators: Vec::new(),
    };
    g.compute_classes();
    g.generators = g.greedy_generators();
    Ok(g)
}

impl FiniteGroup {
    /// Attach a central element of order ≤ 2 (super structure).
    pub fn with_z(mut self, z: usize) -> Result<Self> {
        if z >= self.n || self.mul(z, z) != self.identity || (0..self.n).any(|g| self.mul(z, g) != self.mul(g, z)) {
            return Err(Error::BadZ(z));
        }
        self.z = Some(z);
        Ok(self)
    }

    pub fn without_z(mut self) -> Self {
        self.z = None;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }
    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }
    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }
    /// The distinguished central element, if any.
    pub fn z(&self) -> Option<usize> {
        self.z
    }
    /// `z` if present, otherwise the identity (the non-super case).
    pub fn z_or_identity(&self) -> usize {
        self.z.unwrap_or(self.identity)
    }
    pub fn assoc_check(&self) -> AssocCheck {
        self.assoc
    }
    /// Multiplication table as nested vectors.
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }
    /// `x g x⁻¹`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }
    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.commute(a, b)))
    }
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }
    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.n).fold(1, |acc, g| num_integer::lcm(acc, self.element_order(g)))
    }
    /// A small generating set (greedy, in index order).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: BTreeSet<usize> = [self.identity].into();
        for g in 0..self.n {
            if !span.contains(&g) {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut span: BTreeSet<usize> = [self.identity].into();
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if span.insert(y) {
                    frontier.push(y);
                }
            }
        }
        span
    }

    fn compute_classes(&mut self) {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes = Vec::new();
        for g in 0..self.n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..self.n).map(|x| self.conj(x, g)).collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(ConjClass { representative: g, members: members.into_iter().collect() });
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    /// Conjugacy classes ordered by their smallest element (so the identity's
    /// class comes first when the identity is element 0).
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.classes
    }
    pub fn class_index(&self, g: usize) -> usize {
        self.class_of[g]
    }
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn centralizer_elements(&self, g: usize) -> Vec<usize> {
        (0..self.n).filter(|&x| self.commute(x, g)).collect()
    }

    /// Centralizer of `g` as a subgroup carrying its own induced group.
    pub fn centralizer(&self, g: usize) -> Subgroup {
        Subgroup::new(self, self.centralizer_elements(g)).expect("centralizer is a subgroup")
    }

    pub fn commuting_pairs(&self) -> CommutingPairs {
        let mut pairs = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.commute(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        CommutingPairs { pairs }
    }

    /// Orbits of simultaneous conjugation `x·(h, h′) = (xhx⁻¹, xh′x⁻¹)` on a
    /// conjugation-closed set of pairs.
    pub fn diagonal_orbits(&self, pairs: &CommutingPairs) -> Vec<PairOrbit> {
        let set: BTreeSet<(usize, usize)> = pairs.pairs.iter().copied().collect();
        let mut seen = BTreeSet::new();
        let mut orbits = Vec::new();
        for &p in &pairs.pairs {
            if seen.contains(&p) {
                continue;
            }
            let members: BTreeSet<(usize, usize)> =
                (0..self.n).map(|x| (self.conj(x, p.0), self.conj(x, p.1))).collect();
            debug_assert!(members.iter().all(|m| set.contains(m)), "pair set not closed");
            let stabilizer = (0..self.n).filter(|&x| self.conj(x, p.0) == p.0 && self.conj(x, p.1) == p.1).collect();
            seen.extend(members.iter().copied());
            orbits.push(PairOrbit { members: members.into_iter().collect(), stabilizer });
        }
        orbits
    }
}

/// A subgroup as a sorted list of ambient elements plus the induced group on
/// local indices `0..len`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub group: FiniteGroup,
    local: Vec<Option<usize>>,
}

impl Subgroup {
    pub fn new(ambient: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let mut local = vec![None; ambient.order()];
        for (i, &g) in elements.iter().enumerate() {
            local[g] = Some(i);
        }
        let mut table = Vec::with_capacity(elements.len());
        for &a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in &elements {
                let ab = ambient.mul(a, b);
                row.push(local[ab].ok_or_else(|| Error::BadTable(format!("subset not closed: {a}·{b} = {ab}")))?);
            }
            table.push(row);
        }
        let mut group = group_from_table(&table)?;
        if let Some(z) = ambient.z() {
            if let Some(zl) = local[z] {
                group = group.with_z(zl)?;
            }
        }
        Ok(Subgroup { elements, group, local })
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn to_ambient(&self, i: usize) -> usize {
        self.elements[i]
    }
    pub fn to_local(&self, g: usize) -> Option<usize> {
        self.local[g]
    }
    pub fn contains(&self, g: usize) -> bool {
        self.local[g].is_some()
    }
}
