//! Exact local analysis of isolated plane-curve singularities and the
//! singular locus of a bidegree-(3,3) curve.

pub mod branches;
pub mod classify;
pub mod locus;
pub mod milnor;

pub use branches::branch_count;
pub use classify::{
    classify_local, local_invariants, multiplicity, tangent_cone_shape, LocalInvariants,
    SingularityType, TangentConeShape,
};
pub use locus::{is_separating, sing_locus, SingularityReport};
pub use milnor::{milnor_number, milnor_number_with, set_truncation_cap, truncation_cap};
