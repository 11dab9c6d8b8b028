//! Exact linear algebra over a field: dense matrices, sparse vectors and a
//! sparse Gauss–Jordan null-space / rank solver.

use crate::scalar::{Cyclo, Q};
use num_traits::{One, Zero};
use std::fmt::Debug;

/// The operations the solvers need from a scalar field.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        Cyclo::neg(self)
    }
    fn inv(&self) -> Self {
        Cyclo::inv(self)
    }
}

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

/// `a + c·b` for sparse vectors.
pub fn axpy<F: Field>(a: &SparseVec<F>, c: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.mul(&b[j].1)));
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sort by index, merge duplicates and drop zeros.
pub fn normalize_sparse<F: Field>(mut v: Vec<(usize, F)>) -> SparseVec<F> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = y.add(&x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Incremental row-echelon form over `ncols` unknowns.
///
/// Each stored row has pivot coefficient 1 at its smallest column.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivot_row: vec![None; ncols], rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `row` against the stored pivots (leading terms only).
    pub fn reduce(&self, mut row: SparseVec<F>) -> SparseVec<F> {
        loop {
            let Some((lead, c)) = row.first().cloned() else { return row };
            match self.pivot_row[lead] {
                Some(r) => row = axpy(&row, &c.neg(), &self.rows[r]),
                None => return row,
            }
        }
    }

    /// Add a row; returns true when the rank grew.
    pub fn insert(&mut self, row: SparseVec<F>) -> bool {
        let row = self.reduce(row);
        let Some((lead, c)) = row.first().cloned() else { return false };
        let inv = c.inv();
        let row: SparseVec<F> = row.into_iter().map(|(i, x)| (i, x.mul(&inv))).collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    /// Is `v` in the row span?
    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Basis of the solution space of the homogeneous system, one vector per
    /// free column (that column set to 1, other free columns 0).
    pub fn null_space(&self) -> Vec<SparseVec<F>> {
        let free: Vec<usize> = (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect();
        let piv: Vec<usize> = self.pivots();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            // dense work vector; pivots solved from the right
            let mut x: Vec<Option<F>> = vec![None; self.ncols];
            x[f] = Some(F::one());
            for &p in piv.iter().rev() {
                let row = &self.rows[self.pivot_row[p].unwrap()];
                let mut s = F::zero();
                for (c, v) in row.iter().skip(1) {
                    if let Some(xc) = &x[*c] {
                        s = s.add(&v.mul(xc));
                    }
                }
                if !s.is_zero() {
                    x[p] = Some(s.neg());
                }
            }
            out.push(
                x.into_iter().enumerate().filter_map(|(i, v)| v.filter(|v| !v.is_zero()).map(|v| (i, v))).collect(),
            );
        }
        out
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<F = Cyclo> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }
    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows) && self.rows == self.cols
    }
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }
    pub fn scale(&self, c: &F) -> Self {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }
    /// Kronecker product; index (i, k) ↦ i·dim(other) + k.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a.mul(b));
                        }
                    }
                }
            }
        }
        out
    }
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut out = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                out.set(self.rows + i, self.cols + j, o.get(i, j).clone());
            }
        }
        out
    }
    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |s, i| s.add(self.get(i, i)))
    }
    pub fn column(&self, j: usize) -> SparseVec<F> {
        (0..self.rows).filter(|&i| !self.get(i, j).is_zero()).map(|i| (i, self.get(i, j).clone())).collect()
    }
    pub fn row_sparse(&self, i: usize) -> SparseVec<F> {
        (0..self.cols).filter(|&j| !self.get(i, j).is_zero()).map(|j| (j, self.get(i, j).clone())).collect()
    }
    pub fn from_columns(rows: usize, cols: &[SparseVec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c {
                m.set(*i, j, v.clone());
            }
        }
        m
    }
    /// Rows and columns selected by index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row_sparse(i));
        }
        e.rank()
    }
    /// Inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    b.data.swap(p * n + j, col * n + j);
                }
            }
            let inv = a.get(col, col).inv();
            for j in 0..n {
                let (x, y) = (a.get(col, j).mul(&inv), b.get(col, j).mul(&inv));
                a.set(col, j, x);
                b.set(col, j, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let x = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, x);
                    let y = b.get(r, j).sub(&f.mul(b.get(col, j)));
                    b.set(r, j, y);
                }
            }
        }
        Some(b)
    }
    /// Indices of a maximal set of linearly independent columns (greedy,
    /// left to right).
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut e = Echelon::new(self.rows);
        (0..self.cols).filter(|&j| e.insert(self.column(j))).collect()
    }
    pub fn apply_sparse(&self, v: &SparseVec<F>) -> Vec<F> {
        let mut out = vec![F::zero(); self.rows];
        for (j, x) in v {
            for i in 0..self.rows {
                let a = self.get(i, *j);
                if !a.is_zero() {
                    out[i] = out[i].add(&a.mul(x));
                }
            }
        }
        out
    }
}

impl<F: Field> Debug for Mat<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:?}, ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Solve `Σ_k c_k X_k = 0`-type homogeneous systems given as sparse rows.
pub fn null_space<F: Field>(ncols: usize, rows: impl IntoIterator<Item = SparseVec<F>>) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.null_space()
}

/// Basis of `{x : A x = 0}` for dense `A`.
pub fn kernel<F: Field>(a: &Mat<F>) -> Vec<SparseVec<F>> {
    null_space(a.cols, (0..a.rows).map(|i| a.row_sparse(i)))
}

/// Express each column of `b` in terms of the columns of `basis` (which must
/// be independent). Returns the coefficient matrix or `None` if some column
/// lies outside the span.
pub fn coordinates<F: Field>(basis: &Mat<F>, b: &Mat<F>) -> Option<Mat<F>> {
    // solve basis · X = b column by column via normal elimination on [basis | b]
    let n = basis.cols;
    let mut out = Mat::zeros(n, b.cols);
    // left inverse from a maximal nonsingular row subset
    let rows = basis.transpose().independent_columns();
    if rows.len() != n {
        return None;
    }
    let sq = basis.submatrix(&rows, &(0..n).collect::<Vec<_>>());
    let inv = sq.inverse()?;
    let bsub = b.submatrix(&rows, &(0..b.cols).collect::<Vec<_>>());
    let x = inv.mul(&bsub);
    if basis.mul(&x) != *b {
        return None;
    }
    out.data = x.data;
    Some(out)
}
