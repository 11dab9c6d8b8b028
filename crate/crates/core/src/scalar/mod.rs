//! Exact scalars: rationals and elements of cyclotomic fields ℚ(ζ_M).

mod cyclo;
mod poly;
mod sqrt;

pub use cyclo::{cyclotomic_poly, euler_phi, Cyclo};
pub use sqrt::{sqrt_conductor, sqrt_int, sqrt_ratio};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}
