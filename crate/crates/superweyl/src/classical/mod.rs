//! The families sl(m|n) and osp(m|2n) with their root data.

mod chevalley;
mod construct;
mod roots;

pub use chevalley::{
    coroot, root_triple, triangular_decomposition, z_grading, ChevalleyTriple, GradingType, TriangularDecomposition,
    ZGrading,
};
pub use construct::{build_osp, build_sl, from_matrices, osp_form, supercommutator, supermatrix_parity};
pub use roots::{
    cartan_subalgebra, distinguished_simple_roots, root_decomposition, weight_spaces, Base, Root, RootSystem,
    WeightSpace,
};
