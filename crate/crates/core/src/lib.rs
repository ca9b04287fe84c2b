//! Combinatorial proofs for classical first-order logic.

pub mod syntax;
pub mod graphs;
pub mod fograph;
pub mod unify;
pub mod fonet;
pub mod bifib;
pub mod calculus;
pub mod homogeneous;
