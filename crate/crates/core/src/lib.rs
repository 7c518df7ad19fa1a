//! Noncommutative algebras attached to polynomial surfaces in R³: exact
//! rewriting, constraint-surface topology, hermitian representations,
//! spectral branching and a Berezin-Toeplitz cross-check.

pub mod bt;
pub mod error;
pub mod exact;
pub mod free_algebra;
pub mod linalg;
pub mod registry;
pub mod rep;
pub mod spectral;
pub mod surface;

pub use error::{Error, Result};
