//! Fiber trees of closed points on the modular curves X₁(ℓ^k) over a rational
//! elliptic curve, computed two ways: by exact factorization of primitive
//! division polynomials, and by orbits of a supplied ℓ-adic image in GL₂.

pub mod arith;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod fiber_tree;
pub mod gl2;
pub mod registry;

pub use error::{Error, Result};
