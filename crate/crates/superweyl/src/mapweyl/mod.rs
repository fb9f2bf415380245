//! Equivariant map superalgebras, their enveloping algebras and global Weyl
//! modules.

mod eqmap;
mod gamma;
mod garland;
mod hwalgebra;
mod loops;
mod module;
mod pbw;
mod vbar;
mod weyl;

pub use eqmap::{equivariant_map_subalgebra, EqMapAlgebra, Folding, GeneratorKind, MapGenerator};
pub use gamma::{build_truncated_algebra, map_superalgebra, GammaAlgebra};
pub use garland::{check_garland, garland_series, osp12_even_sl2, root_sl2, GarlandReport, GarlandSetting};
pub use hwalgebra::{highest_weight_algebra, right_action, weyl_functor_apply, FunctorModule, HighestWeightAlgebra};
pub use loops::{
    check_first_loop_identity, check_universal_surjection, evaluation_candidate, filtration_stabilization,
    identity_candidate, loop_parameter, random_quotient, reduce_loop_vector, CyclicCandidate, Filtration,
    LoopReduction, SurjectionVerdict,
};
pub use module::RepModule;
pub use pbw::{normal_form_by_rewriting, render_monomial, EnvElement, Envelope, Monomial, Quotient};
pub use vbar::build_vbar;
pub use weyl::{
    build_global_weyl, default_cap, BasisVector, Certificate, Character, PowerRelation, WeylModule, CAP_ENV,
    DEFAULT_CAP,
};
