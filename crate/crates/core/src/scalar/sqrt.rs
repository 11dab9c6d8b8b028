//! Square roots of positive integers as cyclotomic integers, via quadratic
//! Gauss sums.

use super::{cyclo::Cyclo, Q};
use crate::error::{Error, Result};
use num_bigint::BigInt;

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Split `n = s² · f` with `f` square-free.
fn square_split(n: u64) -> (u64, Vec<u64>) {
    let mut s = 1;
    let mut f = Vec::new();
    for (p, e) in factor(n) {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            f.push(p);
        }
    }
    (s, f)
}

/// Smallest conductor M with √n ∈ ℚ(ζ_M): the lcm over primes p dividing the
/// square-free part of n of 8 (p = 2), p (p ≡ 1 mod 4) or 4p (p ≡ 3 mod 4).
pub fn sqrt_conductor(n: u64) -> u32 {
    let (_, f) = square_split(n);
    f.iter().fold(1u32, |acc, &p| {
        let need = match p {
            2 => 8,
            p if p % 4 == 1 => p as u32,
            p => 4 * p as u32,
        };
        num_integer::lcm(acc, need)
    })
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// Σ_{a=1}^{p−1} (a/p) ζ_p^a at conductor m (p odd prime, p | m).
fn gauss_sum(p: u64, m: u32) -> Cyclo {
    let step = (m as u64 / p) as i64;
    let mut g = Cyclo::zero();
    for a in 1..p {
        let t = Cyclo::zeta_pow(m, a as i64 * step);
        if legendre(a, p) == 1 {
            g += &t;
        } else {
            g -= &t;
        }
    }
    g
}

/// The positive square root of `n` as an element of ℚ(ζ_M).
///
/// Requires `sqrt_conductor(n) | M` (in particular `4n | M` suffices). The
/// classical signs g_p = √p (p ≡ 1 mod 4), g_p = i√p (p ≡ 3 mod 4) fix the
/// root; the result is checked to square to `n` exactly and to be positive
/// under ζ_M ↦ exp(2πi/M).
pub fn sqrt_int(n: u64, m: u32) -> Result<Cyclo> {
    if n == 0 {
        return Ok(Cyclo::zero());
    }
    let required = sqrt_conductor(n);
    if m == 0 || !m.is_multiple_of(required) {
        return Err(Error::ConductorTooSmall { n, m, required });
    }
    let (s, f) = square_split(n);
    let mut r = Cyclo::rational(Q::from_integer(BigInt::from(s)));
    for p in f {
        let root = if p == 2 {
            let z = Cyclo::zeta_pow(m, (m / 8) as i64);
            &z + &z.conjugate()
        } else if p % 4 == 1 {
            gauss_sum(p, m)
        } else {
            let minus_i = Cyclo::zeta_pow(m, -((m / 4) as i64));
            &minus_i * &gauss_sum(p, m)
        };
        r = &r * &root;
    }
    assert!(&r * &r == Cyclo::from_int(n as i64), "sqrt({n}) does not square to {n}");
    assert!(r.is_positive_real(), "sqrt({n}) is not positive");
    Ok(r)
}

/// √(a/b) = √(ab)/b at conductor m.
pub fn sqrt_ratio(a: u64, b: u64, m: u32) -> Result<Cyclo> {
    Ok(sqrt_int(a * b, m)?.scale(&Q::new(BigInt::from(1), BigInt::from(b))))
}
