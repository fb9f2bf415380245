//! Diagram automorphisms, their eigenspace gradings and fixed subalgebras.

mod automorphism;
mod checks;
mod decomposition;

pub use automorphism::{
    compatible_scale, diagram_automorphism, diagram_compatible, extend_from_generators, flip, fold_automorphism,
    order_of, parse_permutation, root_data, Automorphism,
};
pub use checks::{check_condition_c, invariant_gram, structural_checks, CheckOutcome, ConditionC, StructuralReport};
pub use decomposition::{
    check_bracket_compatible, distinguished_cartan_data, eigenspace_decomposition, fixed_subalgebra, identify_type,
    CartanData, GradedDecomposition, Identification,
};
