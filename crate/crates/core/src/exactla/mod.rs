//! Exact dense linear algebra over a prime field GF(p).
//!
//! Every Hom, Ext and kernel computation in the crate bottoms out here.
//! Elimination is deterministic (leftmost pivot, smallest row), so results
//! are reproducible run to run.

mod field;
mod matrix;
pub mod poly;

pub use field::PrimeField;
pub use matrix::{Matrix, Rref};
