//! Multiplicity matrices: objects of A⊠A for modular A, with the reduced
//! product X_i^j ⊗̄ X_k^l = δ_{jk} X_i^l (X_i^j := X_i ⊠ X_j*).

use crate::error::{Error, Result};
use crate::scalar::Cyclo;
use serde::{Deserialize, Serialize};

/// Simple labels with duality and exact positive dimensions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FusionLabelSet {
    pub name: String,
    pub labels: Vec<String>,
    /// `dual[i]` is the index of i*.
    pub dual: Vec<usize>,
    pub dims: Vec<Cyclo>,
}

impl FusionLabelSet {
    pub fn new(name: &str, labels: Vec<String>, dual: Vec<usize>, dims: Vec<Cyclo>) -> Result<Self> {
        let s = FusionLabelSet { name: name.into(), labels, dual, dims };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        let bad = |m: &str| Err(Error::BadLabelFile(format!("{}: {m}", self.name)));
        if n == 0 || self.dual.len() != n || self.dims.len() != n {
            return bad("labels, dual and dims must have the same nonzero length");
        }
        if self.dual.iter().any(|&j| j >= n) || (0..n).any(|i| self.dual[self.dual[i]] != i) {
            return bad("duality is not an involution");
        }
        if self.dual[0] != 0 || !self.dims[0].is_one() {
            return bad("label 0 must be the self-dual unit with dimension 1");
        }
        for i in 0..n {
            if !self.dims[i].is_positive_real() {
                return bad(&format!("dimension of {} is not positive", self.labels[i]));
            }
            if self.dims[i] != self.dims[self.dual[i]] {
                return bad(&format!("d({}) ≠ d({}*)", self.labels[i], self.labels[i]));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: FusionLabelSet = serde_json::from_str(text).map_err(|e| Error::BadLabelFile(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// {1, τ} with d_τ = (1+√5)/2 = −ζ₅² − ζ₅³.
    pub fn fibonacci() -> Self {
        let z2 = Cyclo::zeta_pow(5, 2);
        let z3 = Cyclo::zeta_pow(5, 3);
        let phi = -(z2 + z3);
        Self::new("fibonacci", vec!["1".into(), "tau".into()], vec![0, 1], vec![Cyclo::one(), phi]).unwrap()
    }

    /// {1, σ, ψ} with d_σ = √2.
    pub fn ising() -> Self {
        let s2 = crate::scalar::sqrt_int(2, 8).unwrap();
        Self::new(
            "ising",
            vec!["1".into(), "sigma".into(), "psi".into()],
            vec![0, 1, 2],
            vec![Cyclo::one(), s2, Cyclo::one()],
        )
        .unwrap()
    }

    /// Dimensions {1, 1, 2} of Rep(S3).
    pub fn rep_s3() -> Self {
        Self::new(
            "rep_s3",
            vec!["triv".into(), "sign".into(), "std".into()],
            vec![0, 1, 2],
            vec![Cyclo::one(), Cyclo::one(), Cyclo::from_int(2)],
        )
        .unwrap()
    }
}

/// An object ⊕ m_ij X_i^j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatVecObject {
    pub m: Vec<Vec<u64>>,
}

impl MatVecObject {
    pub fn zero(n: usize) -> Self {
        MatVecObject { m: vec![vec![0; n]; n] }
    }

    /// X_i^j.
    pub fn simple(n: usize, i: usize, j: usize) -> Self {
        let mut o = Self::zero(n);
        o.m[i][j] = 1;
        o
    }

    /// ⊕_i X_i^i.
    pub fn unit(n: usize) -> Self {
        let mut o = Self::zero(n);
        for i in 0..n {
            o.m[i][i] = 1;
        }
        o
    }

    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        MatVecObject {
            m: self.m.iter().zip(&o.m).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect(),
        }
    }

    fn check(&self, set: &FusionLabelSet) -> Result<()> {
        if self.size() != set.len() || self.m.iter().any(|r| r.len() != set.len()) {
            return Err(Error::LabelMismatch);
        }
        Ok(())
    }
}

/// (V⊗̄W)_i^l = Σ_j V_i^j W_j^l.
pub fn red_product(v: &MatVecObject, w: &MatVecObject) -> Result<MatVecObject> {
    let n = v.size();
    if w.size() != n {
        return Err(Error::LabelMismatch);
    }
    let mut o = MatVecObject::zero(n);
    for i in 0..n {
        for j in 0..n {
            if v.m[i][j] == 0 {
                continue;
            }
            for l in 0..n {
                o.m[i][l] += v.m[i][j] * w.m[j][l];
            }
        }
    }
    Ok(o)
}

/// Definition-level oracle: expand both objects into simples
/// W₁⊠Y₁ = X_i⊠X_j*, W₂⊠Y₂ = X_k⊠X_l*, and add ⟨Y₁, W₂⟩·(W₁⊠Y₂), where
/// dim⟨X_j*, X_k⟩ = [j = k].
pub fn red_product_bruteforce(v: &MatVecObject, w: &MatVecObject) -> Result<MatVecObject> {
    let n = v.size();
    if w.size() != n {
        return Err(Error::LabelMismatch);
    }
    let mut o = MatVecObject::zero(n);
    for i in 0..n {
        for j in 0..n {
            for _ in 0..v.m[i][j] {
                for k in 0..n {
                    for l in 0..n {
                        for _ in 0..w.m[k][l] {
                            let pairing = u64::from(j == k);
                            o.m[i][l] += pairing;
                        }
                    }
                }
            }
        }
    }
    Ok(o)
}

/// (X_i^j)^∨ = X_j^i: the transpose.
pub fn dual(v: &MatVecObject) -> MatVecObject {
    let n = v.size();
    MatVecObject { m: (0..n).map(|i| (0..n).map(|j| v.m[j][i]).collect()).collect() }
}

/// U_M(X⊠Y) = Y⊠X, so X_i^j = X_i⊠X_j* ↦ X_j*⊠X_i = X_{j*}^{i*}.
pub fn um_action(v: &MatVecObject, set: &FusionLabelSet) -> Result<MatVecObject> {
    v.check(set)?;
    let n = v.size();
    let mut o = MatVecObject::zero(n);
    for i in 0..n {
        for j in 0..n {
            o.m[set.dual[j]][set.dual[i]] += v.m[i][j];
        }
    }
    Ok(o)
}

/// Σ m_ij d_j/d_i.
pub fn left_dim(v: &MatVecObject, set: &FusionLabelSet) -> Result<Cyclo> {
    v.check(set)?;
    let mut s = Cyclo::zero();
    for i in 0..v.size() {
        for j in 0..v.size() {
            if v.m[i][j] > 0 {
                s += &(Cyclo::from_int(v.m[i][j] as i64) * set.dims[j].try_div(&set.dims[i])?);
            }
        }
    }
    Ok(s)
}

/// Σ m_ij d_i/d_j.
pub fn right_dim(v: &MatVecObject, set: &FusionLabelSet) -> Result<Cyclo> {
    left_dim(&dual(v), set)
}

/// L[i][j] = left dimension of X_i^j = d_j/d_i.
pub fn left_dim_matrix(set: &FusionLabelSet) -> Result<Vec<Vec<Cyclo>>> {
    let n = set.len();
    (0..n).map(|i| (0..n).map(|j| set.dims[j].try_div(&set.dims[i])).collect()).collect()
}

/// R[i][j] = right dimension of X_i^j = d_i/d_j.
pub fn right_dim_matrix(set: &FusionLabelSet) -> Result<Vec<Vec<Cyclo>>> {
    let n = set.len();
    (0..n).map(|i| (0..n).map(|j| set.dims[i].try_div(&set.dims[j])).collect()).collect()
}

/// N[(i,j)][(k,l)] = multiplicity table of simples: the label of the
/// product when nonzero (δ_{jk} X_i^l), flattened as index i·n + l.
pub fn simple_fusion_table(n: usize) -> Vec<Vec<Option<usize>>> {
    let mut t = vec![vec![None; n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j == k {
                        t[i * n + j][k * n + l] = Some(i * n + l);
                    }
                }
            }
        }
    }
    t
}
