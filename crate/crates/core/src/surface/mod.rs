//! Constraint surfaces, Morse counting and the Poisson bracket.

mod poly3;
mod topology;
mod upoly;

pub use poly3::*;
pub use topology::*;
pub use upoly::UPoly;
