//! Random generators and brute-force oracles for the test suites.

pub mod gen;
pub mod laws;
pub mod oracle;
pub mod proofs;

pub use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
