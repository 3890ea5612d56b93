//! Exact computations in the module categories of bound quiver algebras over
//! GF(p): left add-ω approximations, approximation and faithful dimensions,
//! dominant dimension, Auslander–Reiten translates, tilting certificates, and
//! transfer checks along explicit stable equivalences.
//!
//! Paths compose left factor first: `a*b` means "traverse `a`, then `b`".
//! Modules are quiver representations; an arrow `a: i -> j` acts by a
//! `dim_j x dim_i` matrix on column vectors.

pub mod algebra;
pub mod approx;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod extnat;
pub mod repmod;
pub mod stablecat;
pub mod transport;

pub use algebra::{Algebra, Path, PathExpr, Quiver};
pub use error::{Error, Result};
pub use exactla::{Matrix, PrimeField};
pub use extnat::ExtendedNat;
pub use repmod::{Morphism, Representation};

/// Version string embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
