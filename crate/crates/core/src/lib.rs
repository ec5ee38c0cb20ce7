//! Exact arithmetic for Shintani cone decompositions, Lerch zeta values and
//! Hecke L-values of totally real fields.
//!
//! The crate is `no_std` and only needs `alloc`. Exact quantities live in
//! [`Rat`], number fields ([`numberfield`]) and cyclotomic fields
//! ([`cyclotomic`]); approximations use `f64` with explicit error estimates.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod arith;
pub mod arithmetic_data;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod hecke;
pub mod ideals;
pub mod koszul_cohomology;
pub mod linalg;
pub mod lll;
pub mod modp;
pub mod numberfield;
pub mod poly;
pub mod shintani_cones;
pub mod shintani_values;
pub mod torsion;

pub use arith::{Int, Rat};
pub use error::{Error, Result};

/// Library version echoed in outputs and cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
