//! Exact cyclotomic scalars and sparse linear algebra.

mod cyclotomic;
mod reduce;
mod scalar;
mod sparse;

pub use cyclotomic::{check_conductor, cyclotomic_polynomial, field_degree, MAX_CONDUCTOR};
pub use reduce::{kernel, rank, row_reduce, solve, Echelon, RowReduction, SpanSolver};
pub use scalar::{parse_rational, rat, ratio, CycScalar};
pub use sparse::{SparseMatrix, SparseVec};
