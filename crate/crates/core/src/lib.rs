//! Finite-dimensional realization of `Q`-deformed Fock spaces.
//!
//! Sites form a finite set `T = {0, …, d-1}` with the counting measure, so
//! `H = ℓ²(T) ≅ ℂ^d` and `H^{⊗n} ≅ ℂ^{d^n}`. Every operator (`Ψ_π`, `P_n`,
//! `ℙ_n`, `R_n`, `a⁺(h)`, `a⁻(h)`) is an explicit dense complex matrix, and the
//! crate provides residual checks for the identities they satisfy.
//!
//! Modules:
//! - [`permgroup`]: permutations, inversions, reduced words, `Q_π` weights.
//! - [`kernel`]: the Hermitian kernel `Q` and derived `R`, `G`.
//! - [`qsym`]: `Ψ_k`, `Ψ_π`, `P_n`, `ℙ_n`, `R_n`, `E_k` and spectral helpers.
//! - [`fock`]: Fock space, creation/annihilation, relations and moments.
//! - [`checks`]: residuals of the structural identities and kernel fixtures.

pub mod checks;
pub mod error;
pub mod fock;
pub mod kernel;
pub mod permgroup;
pub mod qsym;
pub mod random;

pub use error::{Error, Result};
pub use kernel::{ExchangeKernel, KernelKind, KernelSpec, QKernel};
pub use permgroup::Permutation;
pub use qsym::{Limits, OperatorMatrix, Tensor};
