//! Dense polynomial helpers over ℤ and ℚ (coefficients in increasing degree).

use super::Q;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub(crate) fn trim_z(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn trim_q(p: &mut Vec<Q>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact division of an integer polynomial by a monic integer polynomial.
pub(crate) fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quo
}

/// Remainder of `a` modulo `b` over ℚ (b nonzero, trimmed).
fn rem_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    trim_q(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        trim_q(&mut r);
    }
    r
}

fn divrem_q(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    trim_q(&mut r);
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut quo = vec![Q::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead_inv;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        quo[k] = c;
        trim_q(&mut r);
    }
    trim_q(&mut quo);
    (quo, r)
}

fn mul_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    trim_q(&mut out);
    out
}

fn sub_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim_q(&mut out);
    out
}

/// Inverse of `a` modulo the (irreducible) polynomial `m`, via the extended
/// Euclidean algorithm. Returns `None` when `a ≡ 0`.
pub(crate) fn inverse_mod(a: &[Q], m: &[Q]) -> Option<Vec<Q>> {
    let a = rem_q(a, m);
    if a.is_empty() {
        return None;
    }
    // invariant: s_i · a ≡ r_i (mod m)
    let (mut r0, mut r1) = (m.to_vec(), a);
    let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
    while !r1.is_empty() {
        let (quo, rem) = divrem_q(&r0, &r1);
        let s2 = sub_q(&s0, &mul_q(&quo, &s1));
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant since m is irreducible
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let mut out: Vec<Q> = s0.into_iter().map(|x| x * &c).collect();
    out = rem_q(&out, m);
    Some(out)
}
