//! Spectra of the position matrix, eigenvalue branching and the
//! commutator-versus-bracket comparison.

mod bracket;
mod branches;
mod eigen;
mod report;

pub use bracket::*;
pub use branches::*;
pub use eigen::*;
pub use report::*;
