//! Exact free-algebra arithmetic, rewriting and confluence checks.

mod genus;
mod poly;
mod rewrite;
mod torus;
mod word;

pub use genus::*;
pub use poly::NcPoly;
pub use rewrite::*;
pub use torus::*;
pub use word::*;
