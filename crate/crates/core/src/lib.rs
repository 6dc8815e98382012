//! Exact multiple sums: brute-force nested evaluation, partition-indexed
//! reduction to power sums, and a registry of the partition, Vieta,
//! Faulhaber, Stirling, Bernoulli and zeta identities built on them.
//!
//! All verdicts use exact rational (or exact `Q[pi]`) equality.

pub mod arith;
pub mod cli;
pub mod error;
pub mod identities;
pub mod multisum;
pub mod partitions;
pub mod polynomials;
pub mod selftest;
pub mod special;

pub use arith::{ExactRational, PiPolynomial};
pub use error::{Error, Result};
