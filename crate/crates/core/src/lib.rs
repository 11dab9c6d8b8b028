//! Exact computations with Drinfeld doubles of finite groups and their
//! module categories viewed as equivariant bundles.

// Index loops mirror the matrix/tensor formulas more directly than iterators.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bundle;
pub mod error;
pub mod group;
pub mod linalg;
pub mod matvec;
pub mod oracle;
pub mod random;
pub mod rep;
pub mod scalar;
pub mod zoo;

pub use error::{Error, Result};
pub use group::{group_from_table, FiniteGroup, Subgroup};
pub use scalar::Cyclo;
