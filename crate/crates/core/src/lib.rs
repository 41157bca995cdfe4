//! Rate regions for the two-user discrete memoryless interference channel.
//!
//! The crate covers the whole pipeline from a factored joint distribution to
//! a compared pair of polygons in the `(R1, R2)` plane:
//!
//! - [`probspace`] holds exact joint distributions and information measures.
//! - [`bounds`] turns a conforming distribution into bound constants and
//!   checks the inequalities that relate them.
//! - [`polytope`] is exact linear-inequality algebra: Fourier-Motzkin
//!   elimination with symbolic right-hand sides, redundancy removal, an exact
//!   rational simplex, inclusion tests and 2-D geometry.
//! - [`regions`] instantiates every named region and runs the cross-checks.
//! - [`binning_sim`] is a Monte-Carlo random-binning codebook simulator.
//! - [`common_info`] evaluates the dependent-message example pair.
//! - [`sample`] draws seeded random distributions and [`sweep`] aggregates
//!   checks over them.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod binning_sim;
pub mod bounds;
pub mod common_info;
mod error;
pub mod polytope;
pub mod probspace;
pub mod rational;
pub mod regions;
pub mod sample;
pub mod sweep;

pub use error::{Error, Result};

/// Absolute tolerance, in bits, for comparing information measures.
pub const TOL: f64 = 1e-9;
