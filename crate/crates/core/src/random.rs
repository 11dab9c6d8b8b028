//! Seeded random bundles for property tests and the CLI.

use crate::bundle::{EquivariantBundle, Simple};
use crate::linalg::Mat;
use crate::scalar::Cyclo;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random invertible integer matrix L·U (unit triangular factors with
/// entries in [-2, 2]).
pub fn random_unimodular(n: usize, rng: &mut impl Rng) -> Mat {
    let mut l = Mat::identity(n);
    let mut u = Mat::identity(n);
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, Cyclo::from_int(rng.gen_range(-2..=2)));
            u.set(j, i, Cyclo::from_int(rng.gen_range(-2..=2)));
        }
    }
    l.mul(&u)
}

/// Direct sum of 1..=`max_summands` random simples, followed by a random
/// change of basis inside every fiber (so the basis is no longer adapted to
/// the simples, nor in general to the parity).
pub fn random_bundle(simples: &[Simple], max_summands: usize, rng: &mut impl Rng) -> EquivariantBundle {
    assert!(!simples.is_empty() && max_summands >= 1);
    let k = rng.gen_range(1..=max_summands);
    let mut b = simples[rng.gen_range(0..simples.len())].bundle.clone();
    for _ in 1..k {
        let s = &simples[rng.gen_range(0..simples.len())].bundle;
        b = b.direct_sum(s).expect("same group");
    }
    scramble_fibers(&b, rng)
}

/// Random basis change preserving every fiber.
pub fn scramble_fibers(b: &EquivariantBundle, rng: &mut impl Rng) -> EquivariantBundle {
    let d = b.dim();
    let mut t = Mat::zeros(d, d);
    for g in 0..b.group.order() {
        let idx = b.fiber(g);
        let block = random_unimodular(idx.len(), rng);
        for (r, &i) in idx.iter().enumerate() {
            for (c, &j) in idx.iter().enumerate() {
                t.set(i, j, block.get(r, c).clone());
            }
        }
    }
    b.change_basis(&t).expect("unimodular blocks are invertible")
}
