//! Coordinate sumsets and difference sets of modular hyperbolas
//!
//! `H_d(a; n)` is the set of `d`-tuples in `[1, n)^d` whose product is
//! `a mod n`. This crate provides
//!
//! - [`arith`]: factorization, CRT, Legendre symbols, square roots and square
//!   counts modulo prime powers;
//! - [`hyperbola`]: a brute-force enumeration oracle for `H_d(a; n)` and its
//!   signed sumsets;
//! - [`cardinality`]: closed-form sizes of the reduced sumset and difference
//!   set, composed multiplicatively over the factorization of `n`, and the
//!   ratio `c2(a; n)`;
//! - [`analysis`]: dominance scans, density estimates, primorial series, full
//!   coverage checks for `d > 2` and a constructive sum-product solver;
//! - [`report`] and [`svg`]: CSV/JSON/table emission and scatter plots.

pub mod analysis;
pub mod arith;
pub mod cardinality;
mod error;
pub mod hyperbola;
mod parallel;
pub mod report;
pub mod svg;

pub use error::{Error, Result};
pub use parallel::with_threads;

/// Exact rational used for all ratios.
pub type Rational = num_rational::Ratio<u128>;
