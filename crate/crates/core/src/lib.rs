//! Exact-arithmetic audits for congruence-preserving integer sequences.
//!
//! The crate generates and checks (primary) pseudo-polynomials, computes
//! exact Hankel determinants and their primorial-power divisibility, verifies
//! invariance of Hankel determinants under the binomial transform, detects
//! rational generating functions from finite prefixes, and evaluates the
//! archimedean bounds (Chebyshev theta sums, hedgehog capacities) that the
//! determinant argument plays against.

pub mod analytic;
pub mod audit;
pub mod binomial;
pub mod cli;
pub mod error;
pub mod exact;
pub mod hankel;
pub mod io;
pub mod matrix;
pub mod poly;
pub mod primes;
pub mod sequences;

pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use poly::IntPolynomial;
pub use sequences::ExactSequence;
