use super::poly::{div_monic, inverse_mod, trim_z};
use super::Q;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    let (mut n, mut out, mut p) = (m, m, 2);
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Φ_M with integer coefficients (increasing degree), computed by dividing
/// x^M − 1 by Φ_d for every proper divisor d of M.
pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    with_ctx(m, |c| c.phi_poly.clone())
}

fn compute_cyclotomic(m: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d < m {
            let pd = compute_cyclotomic(d, memo);
            num = div_monic(&num, &pd);
            trim_z(&mut num);
        }
    }
    memo.insert(m, num.clone());
    num
}

/// Per-conductor reduction data.
struct Ctx {
    m: u32,
    phi: usize,
    phi_poly: Vec<BigInt>,
    phi_q: Vec<Q>,
    /// `x^k mod Φ_M` for `k < max(M, 2φ−1)`, as sparse integer vectors.
    pow: Vec<Vec<(usize, BigInt)>>,
}

impl Ctx {
    fn new(m: u32) -> Ctx {
        let mut memo = HashMap::new();
        let phi_poly = compute_cyclotomic(m, &mut memo);
        let phi = phi_poly.len() - 1;
        debug_assert_eq!(phi as u32, euler_phi(m));
        let top = (m as usize).max(2 * phi);
        let mut pow = Vec::with_capacity(top);
        let mut cur = vec![BigInt::zero(); phi.max(1)];
        cur[0] = BigInt::one();
        if phi == 0 {
            unreachable!()
        }
        for _ in 0..top {
            pow.push(cur.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect());
            // multiply by x and reduce
            let carry = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !carry.is_zero() {
                for i in 0..phi {
                    cur[i] -= &carry * &phi_poly[i];
                }
            }
        }
        let phi_q = phi_poly.iter().map(|c| Q::from_integer(c.clone())).collect();
        Ctx { m, phi, phi_poly, phi_q, pow }
    }
}

thread_local! {
    static CTX: RefCell<HashMap<u32, Rc<Ctx>>> = RefCell::new(HashMap::new());
    static LAST: RefCell<Option<Rc<Ctx>>> = const { RefCell::new(None) };
}

fn with_ctx<R>(m: u32, f: impl FnOnce(&Ctx) -> R) -> R {
    let ctx = LAST.with(|l| {
        if let Some(c) = l.borrow().as_ref() {
            if c.m == m {
                return Some(c.clone());
            }
        }
        None
    });
    let ctx = ctx.unwrap_or_else(|| {
        let c = CTX.with(|t| t.borrow_mut().entry(m).or_insert_with(|| Rc::new(Ctx::new(m))).clone());
        LAST.with(|l| *l.borrow_mut() = Some(c.clone()));
        c
    });
    f(&ctx)
}

/// An exact element of ℚ(ζ_M).
///
/// Stored in the power basis `1, ζ, …, ζ^{φ(M)−1}` reduced modulo Φ_M, so
/// equality is coefficient-wise. Rational values are kept in a separate
/// representation; they carry no conductor and combine freely with elements
/// of any conductor. Two non-rational elements must share a conductor to be
/// combined (the `try_*` methods report [`Error::ConductorMismatch`], the
/// operator impls panic).
#[derive(Clone)]
pub struct Cyclo(Repr);

#[derive(Clone)]
enum Repr {
    Rat(Q),
    /// Invariant: some coefficient of positive degree is nonzero.
    Poly {
        m: u32,
        c: Vec<Q>,
    },
}

impl Cyclo {
    pub fn zero() -> Cyclo {
        Cyclo(Repr::Rat(Q::zero()))
    }
    pub fn one() -> Cyclo {
        Cyclo(Repr::Rat(Q::one()))
    }
    pub fn from_int(n: i64) -> Cyclo {
        Cyclo(Repr::Rat(Q::from_integer(BigInt::from(n))))
    }
    pub fn rational(q: Q) -> Cyclo {
        Cyclo(Repr::Rat(q))
    }
    pub fn frac(n: i64, d: i64) -> Cyclo {
        Cyclo(Repr::Rat(super::q(n, d)))
    }

    /// ζ_M^k (k taken mod M).
    pub fn zeta_pow(m: u32, k: i64) -> Cyclo {
        assert!(m >= 1);
        let k = k.rem_euclid(m as i64) as usize;
        if m <= 2 {
            return Cyclo::from_int(if m == 2 && k == 1 { -1 } else { 1 });
        }
        with_ctx(m, |ctx| {
            let mut c = vec![Q::zero(); ctx.phi];
            for (i, v) in &ctx.pow[k] {
                c[*i] = Q::from_integer(v.clone());
            }
            Cyclo::normalize(m, c)
        })
    }
    pub fn zeta(m: u32) -> Cyclo {
        Cyclo::zeta_pow(m, 1)
    }

    /// Build from power-basis coefficients of length φ(M).
    pub fn from_coeffs(m: u32, coeffs: Vec<Q>) -> Result<Cyclo> {
        let phi = euler_phi(m) as usize;
        if coeffs.len() != phi {
            return Err(Error::ShapeMismatch(format!("conductor {m} needs {phi} coefficients, got {}", coeffs.len())));
        }
        if m <= 2 {
            return Ok(Cyclo(Repr::Rat(coeffs[0].clone())));
        }
        Ok(Cyclo::normalize(m, coeffs))
    }

    fn normalize(m: u32, c: Vec<Q>) -> Cyclo {
        if c.iter().skip(1).all(|x| x.is_zero()) {
            Cyclo(Repr::Rat(c.into_iter().next().unwrap_or_else(Q::zero)))
        } else {
            Cyclo(Repr::Poly { m, c })
        }
    }

    /// Conductor the value is stored at (1 for rationals).
    pub fn conductor(&self) -> u32 {
        match &self.0 {
            Repr::Rat(_) => 1,
            Repr::Poly { m, .. } => *m,
        }
    }

    /// Power-basis coefficients at conductor `m` (the value is lifted first).
    pub fn coeffs_at(&self, m: u32) -> Result<Vec<Q>> {
        match &self.conductor_lift(m)?.0 {
            Repr::Rat(q) => {
                let mut c = vec![Q::zero(); euler_phi(m) as usize];
                c[0] = q.clone();
                Ok(c)
            }
            Repr::Poly { c, .. } => Ok(c.clone()),
        }
    }

    /// Coefficients at the stored conductor.
    pub fn coeffs(&self) -> Vec<Q> {
        self.coeffs_at(self.conductor()).expect("own conductor")
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_zero())
    }
    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rat(q) if q.is_one())
    }
    pub fn is_rational(&self) -> bool {
        matches!(&self.0, Repr::Rat(_))
    }
    pub fn as_rational(&self) -> Option<&Q> {
        match &self.0 {
            Repr::Rat(q) => Some(q),
            _ => None,
        }
    }

    fn common(&self, other: &Cyclo) -> Result<Option<u32>> {
        match (&self.0, &other.0) {
            (Repr::Poly { m: a, .. }, Repr::Poly { m: b, .. }) if a != b => Err(Error::ConductorMismatch(*a, *b)),
            (Repr::Poly { m, .. }, _) | (_, Repr::Poly { m, .. }) => Ok(Some(*m)),
            _ => Ok(None),
        }
    }

    pub fn try_add(&self, other: &Cyclo) -> Result<Cyclo> {
        self.common(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Cyclo(Repr::Rat(a + b)),
            (Repr::Rat(a), Repr::Poly { m, c }) | (Repr::Poly { m, c }, Repr::Rat(a)) => {
                let mut c = c.clone();
                c[0] += a;
                Cyclo(Repr::Poly { m: *m, c })
            }
            (Repr::Poly { m, c: a }, Repr::Poly { c: b, .. }) => {
                let c = a.iter().zip(b).map(|(x, y)| x + y).collect();
                Cyclo::normalize(*m, c)
            }
        })
    }

    pub fn try_sub(&self, other: &Cyclo) -> Result<Cyclo> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Cyclo {
        match &self.0 {
            Repr::Rat(a) => Cyclo(Repr::Rat(-a)),
            Repr::Poly { m, c } => Cyclo(Repr::Poly { m: *m, c: c.iter().map(|x| -x).collect() }),
        }
    }

    pub fn scale(&self, q: &Q) -> Cyclo {
        if q.is_zero() {
            return Cyclo::zero();
        }
        match &self.0 {
            Repr::Rat(a) => Cyclo(Repr::Rat(a * q)),
            Repr::Poly { m, c } => Cyclo(Repr::Poly { m: *m, c: c.iter().map(|x| x * q).collect() }),
        }
    }

    pub fn try_mul(&self, other: &Cyclo) -> Result<Cyclo> {
        self.common(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => Cyclo(Repr::Rat(a * b)),
            (Repr::Rat(a), _) => other.scale(a),
            (_, Repr::Rat(b)) => self.scale(b),
            (Repr::Poly { m, c: a }, Repr::Poly { c: b, .. }) => with_ctx(*m, |ctx| {
                let mut raw = vec![Q::zero(); 2 * ctx.phi - 1];
                let bn: Vec<(usize, &Q)> = b.iter().enumerate().filter(|(_, y)| !y.is_zero()).collect();
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in &bn {
                        raw[i + j] += x * *y;
                    }
                }
                Cyclo::normalize(*m, reduce(ctx, raw))
            }),
        })
    }

    pub fn try_inv(&self) -> Result<Cyclo> {
        match &self.0 {
            Repr::Rat(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Cyclo(Repr::Rat(a.recip())))
                }
            }
            Repr::Poly { m, c } => with_ctx(*m, |ctx| {
                let mut inv = inverse_mod(c, &ctx.phi_q).ok_or(Error::DivisionByZero)?;
                inv.resize(ctx.phi, Q::zero());
                Ok(Cyclo::normalize(*m, inv))
            }),
        }
    }

    pub fn inv(&self) -> Cyclo {
        self.try_inv().expect("inverse of zero")
    }

    pub fn try_div(&self, other: &Cyclo) -> Result<Cyclo> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn pow(&self, e: u32) -> Cyclo {
        let mut out = Cyclo::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conjugate(&self) -> Cyclo {
        match &self.0 {
            Repr::Rat(_) => self.clone(),
            Repr::Poly { m, c } => with_ctx(*m, |ctx| {
                let mut out = vec![Q::zero(); ctx.phi];
                for (k, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let e = (ctx.m as usize - k) % ctx.m as usize;
                    for (i, v) in &ctx.pow[e] {
                        out[*i] += x * v;
                    }
                }
                Cyclo::normalize(*m, out)
            }),
        }
    }

    /// The same field element in ℚ(ζ_{M′}) via ζ_M = ζ_{M′}^{M′/M}.
    pub fn conductor_lift(&self, m2: u32) -> Result<Cyclo> {
        match &self.0 {
            Repr::Rat(_) => Ok(self.clone()),
            Repr::Poly { m, c } => {
                if !m2.is_multiple_of(*m) {
                    return Err(Error::NotAMultiple(*m, m2));
                }
                if m2 == *m {
                    return Ok(self.clone());
                }
                let r = (m2 / m) as usize;
                Ok(with_ctx(m2, |ctx| {
                    let mut out = vec![Q::zero(); ctx.phi];
                    for (k, x) in c.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (i, v) in &ctx.pow[(k * r) % m2 as usize] {
                            out[*i] += x * v;
                        }
                    }
                    Cyclo::normalize(m2, out)
                }))
            }
        }
    }

    /// Value under ζ_M ↦ exp(2πi/M), with a rigorous-enough absolute error
    /// bound for 64-bit evaluation.
    pub fn to_complex(&self) -> (f64, f64, f64) {
        match &self.0 {
            Repr::Rat(a) => {
                let v = a.to_f64().unwrap_or(f64::NAN);
                (v, 0.0, v.abs() * 4.0 * f64::EPSILON)
            }
            Repr::Poly { m, c } => {
                let (mut re, mut im, mut mag) = (0.0, 0.0, 0.0);
                for (k, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let v = x.to_f64().unwrap_or(f64::NAN);
                    let t = std::f64::consts::TAU * k as f64 / *m as f64;
                    re += v * t.cos();
                    im += v * t.sin();
                    mag += v.abs();
                }
                (re, im, mag * (c.len() as f64 + 8.0) * 8.0 * f64::EPSILON)
            }
        }
    }

    /// True when the complex value is certainly real and strictly positive.
    pub fn is_positive_real(&self) -> bool {
        if let Repr::Rat(a) = &self.0 {
            return a.is_positive();
        }
        if self.conjugate() != *self {
            return false;
        }
        let (re, _, err) = self.to_complex();
        re > err
    }

    pub fn to_f64(&self) -> f64 {
        self.to_complex().0
    }
}

fn reduce(ctx: &Ctx, raw: Vec<Q>) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::with_capacity(ctx.phi);
    let mut it = raw.into_iter();
    for _ in 0..ctx.phi {
        out.push(it.next().unwrap_or_else(Q::zero));
    }
    for (k, x) in it.enumerate() {
        if x.is_zero() {
            continue;
        }
        for (i, v) in &ctx.pow[ctx.phi + k] {
            out[*i] += &x * v;
        }
    }
    out
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rat(a), Repr::Rat(b)) => a == b,
            (Repr::Poly { m: ma, c: a }, Repr::Poly { m: mb, c: b }) => {
                if ma == mb {
                    a == b
                } else {
                    let l = ma.lcm(mb);
                    self.conductor_lift(l).ok().map(|x| x.coeffs()) == other.conductor_lift(l).ok().map(|y| y.coeffs())
                }
            }
            _ => false,
        }
    }
}
impl Eq for Cyclo {}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Cyclo::from_int(n)
    }
}
impl From<Q> for Cyclo {
    fn from(q: Q) -> Self {
        Cyclo::rational(q)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $m:ident) => {
        impl std::ops::$tr<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: &Cyclo) -> Cyclo {
                self.$m(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: &Cyclo) -> Cyclo {
                (&self).$m(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $f(self, rhs: Cyclo) -> Cyclo {
                self.$m(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl std::ops::Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo::neg(&self)
    }
}
impl std::ops::Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo::neg(self)
    }
}

impl std::ops::AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        if rhs.is_zero() {
            return;
        }
        if let (Repr::Rat(a), Repr::Rat(b)) = (&mut self.0, &rhs.0) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}
impl std::ops::SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, rhs: &Cyclo) {
        if rhs.is_zero() {
            return;
        }
        if let (Repr::Rat(a), Repr::Rat(b)) = (&mut self.0, &rhs.0) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rat(a) => write!(f, "{a}"),
            Repr::Poly { m, c } => {
                let mut first = true;
                for (k, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match k {
                        0 => write!(f, "{x}")?,
                        1 => write!(f, "{x}*ζ{m}")?,
                        _ => write!(f, "{x}*ζ{m}^{k}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// JSON form: {"M": m, "coeffs": [[num, den], ...]} of length φ(M).
// Integers that fit in i64 are written as numbers, larger ones as strings.

#[derive(serde::Serialize, serde::Deserialize)]
struct CycloJson {
    #[serde(rename = "M")]
    m: u32,
    coeffs: Vec<[serde_json::Value; 2]>,
}

fn int_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

fn int_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| format!("bad integer {n}")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        _ => Err(format!("expected integer, got {v}")),
    }
}

impl serde::Serialize for Cyclo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.conductor();
        let coeffs = self.coeffs().iter().map(|x| [int_to_json(x.numer()), int_to_json(x.denom())]).collect();
        CycloJson { m, coeffs }.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Cyclo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = CycloJson::deserialize(d)?;
        if j.m == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let mut coeffs = Vec::with_capacity(j.coeffs.len());
        for [n, dn] in &j.coeffs {
            let n = int_from_json(n).map_err(D::Error::custom)?;
            let dn = int_from_json(dn).map_err(D::Error::custom)?;
            if dn.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            coeffs.push(Q::new(n, dn));
        }
        Cyclo::from_coeffs(j.m, coeffs).map_err(D::Error::custom)
    }
}
