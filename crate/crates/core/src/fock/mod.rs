//! The graded Fock space, creation/annihilation operators and the relations
//! they satisfy.

mod exclusion;
mod moments;
mod relations;
mod space;

pub use exclusion::{
    annihilation_power_norm, check_exclusion_hypotheses, creation_power_norm, exclusion_residual,
    inversion_weight_sum, operator_norm_check_fermion_type, permanent_sum_identity,
    permanent_sum_identity_for, projected_power_norm, q_factorial, root_order, ConstantWeight,
    ROOT_OF_UNITY_TOL,
};
pub use moments::{
    apply_word, commutator_moment, random_field_word, traciality_residual, vacuum_moment, Letter,
    WickWord,
};
pub use relations::{
    best_unimodular_exchange_residual, verify_creation_exchange, verify_qcr, ExchangeResidual,
    RelationResidual,
};
pub use space::{
    a_minus_free, max_degree, DegreeOperators, FockSpace, FockVector, InputPolicy, RANGE_TOL,
};
