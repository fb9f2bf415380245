//! Lie superalgebras given by structure constants.

mod algebra;
mod axioms;
mod closure;
mod format;

pub use algebra::{matrix_supertrace, BasisElement, Element, Parity, Realization, SuperAlgebra};
pub use axioms::{AxiomReport, Violation};
pub use closure::SubAlgebra;
