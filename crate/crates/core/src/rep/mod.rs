//! Hermitian representations: construction, verification, graphs and
//! equivalence.

mod canonical;
mod construct;
mod ellipse;
mod graph;
mod representation;
mod verify;

pub use canonical::*;
pub use construct::*;
pub use ellipse::*;
pub use graph::*;
pub use representation::*;
pub use verify::*;
