//! Operators on `H^{⊗n}` as explicit matrices.

mod operators;
pub mod spectral;
mod tensor;

pub(crate) use operators::dim_of;
pub use operators::{
    bb_p_n, embed, ker_projection_e_k, p_n, psi_k, psi_pi, psi_word, quasisym_check,
    quasisym_product, r_n_operator, s_n_1, QuasisymCheck,
};
pub(crate) use tensor::for_each_tuple;
pub use tensor::{
    index_to_tuple, tuple_to_index, Limits, OperatorMatrix, Tensor, DEFAULT_SIZE_CAP,
};
