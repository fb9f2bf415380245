//! Exact computations with basic classical Lie superalgebras, diagram foldings,
//! equivariant map superalgebras and their global Weyl modules.

pub mod classical;
pub mod cli;
pub mod equivariant;
pub mod error;
pub mod exactcore;
pub mod liesuper;
pub mod mapweyl;

pub use error::{Error, Result};
