//! q-factorials, the inversion-sum identity, the anyonic exclusion principle
//! and the creation-operator norm bound for fermion-type kernels.

use num_complex::Complex64;

use super::space::{FockSpace, FockVector};
use crate::error::{Error, Result};
use crate::kernel::{ExchangeKernel, QKernel};
use crate::permgroup::{all_permutations, q_pi_weight};
use crate::qsym::{bb_p_n, Limits, Tensor};

/// Tolerance on `|q^m − 1|` when accepting `q` as an `m`-th root of unity.
pub const ROOT_OF_UNITY_TOL: f64 = 1e-10;

/// `[m]_q! = ∏_{i=1}^m (1 + q + ⋯ + q^{i-1})`; `[0]_q! = 1`, and `q = 1`
/// gives `m!`.
pub fn q_factorial(q: Complex64, m: usize) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut partial = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    for _ in 0..m {
        partial += power;
        power *= q;
        acc *= partial;
    }
    acc
}

/// `Σ_{π ∈ S_n} Q_π(t)` for a tuple `t` of length `n`.
pub fn inversion_weight_sum<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    t: &[usize],
) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for pi in all_permutations(t.len())? {
        sum += q_pi_weight(kernel, &pi, t)?;
    }
    Ok(sum)
}

/// The constant weight `Q ≡ q` on a single site. Not a kernel: for
/// non-real `q` it is not Hermitian, but `Q_π` is still defined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantWeight(pub Complex64);

impl ExchangeKernel for ConstantWeight {
    fn dim(&self) -> usize {
        1
    }

    fn entry(&self, _s: usize, _t: usize) -> Complex64 {
        self.0
    }
}

/// `(Σ_{π ∈ S_n} q^{|π|}, [n]_q!)`; `S_0` is the trivial group.
pub fn permanent_sum_identity(q: Complex64, n: usize) -> Result<(Complex64, Complex64)> {
    if n > 7 {
        return Err(Error::SizeLimit {
            what: format!("permanent sum for n = {n}"),
            limit: 7,
        });
    }
    let lhs = if n == 0 {
        Complex64::new(1.0, 0.0)
    } else {
        inversion_weight_sum(&ConstantWeight(q), &vec![0; n])?
    };
    Ok((lhs, q_factorial(q, n)))
}

/// `permanent_sum_identity` for the value of a constant kernel.
pub fn permanent_sum_identity_for(kernel: &QKernel, n: usize) -> Result<(Complex64, Complex64)> {
    let q = kernel.constant_value().ok_or_else(|| {
        Error::Precondition("permanent sum identity needs a constant kernel".into())
    })?;
    permanent_sum_identity(q, n)
}

/// Checks `|q| = 1`, `q ≠ 1`, `q^m = 1`, `m ≥ 2`.
pub fn check_exclusion_hypotheses(q: Complex64, m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::Precondition(format!(
            "exclusion needs m >= 2, got {m}"
        )));
    }
    if (q.norm() - 1.0).abs() > ROOT_OF_UNITY_TOL {
        return Err(Error::Precondition(format!("|q| = {} is not 1", q.norm())));
    }
    if (q - Complex64::new(1.0, 0.0)).norm() <= ROOT_OF_UNITY_TOL {
        return Err(Error::Precondition("q = 1 is excluded".into()));
    }
    let qm = q.powu(m as u32);
    if (qm - Complex64::new(1.0, 0.0)).norm() > ROOT_OF_UNITY_TOL {
        return Err(Error::Precondition(format!("q^{m} = {qm} is not 1")));
    }
    Ok(())
}

/// Smallest `m ≥ 2` with `q^m = 1`, searching up to `max_m`.
pub fn root_order(q: Complex64, max_m: usize) -> Option<usize> {
    (2..=max_m).find(|&m| check_exclusion_hypotheses(q, m).is_ok())
}

/// `‖ℙ_m h^{⊗m}‖` under any kernel; no hypotheses.
pub fn projected_power_norm(
    kernel: &QKernel,
    h: &Tensor,
    m: usize,
    limits: &Limits,
) -> Result<f64> {
    if h.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: h.degree(),
        });
    }
    Ok(bb_p_n(kernel, m, limits)?.apply(&h.power(m))?.norm())
}

/// `‖ℙ_m h^{⊗m}‖` for the anyon fermion kernel with parameter `q` on `d`
/// sites, after checking that `q` is a nontrivial `m`-th root of unity.
pub fn exclusion_residual(q: Complex64, m: usize, h: &Tensor, d: usize) -> Result<f64> {
    check_exclusion_hypotheses(q, m)?;
    let kernel = QKernel::anyon_fermion(q, d)?;
    projected_power_norm(&kernel, h, m, &Limits::default())
}

/// `‖a⁺(h)^m F‖` in the Fock norm.
pub fn creation_power_norm(space: &FockSpace, h: &Tensor, m: usize, f: &FockVector) -> Result<f64> {
    let mut v = space.admit(f)?;
    for _ in 0..m {
        v = space.create_admitted(h, &v)?;
    }
    space.norm(&v)
}

/// `‖a⁻(h)^m F‖` in the Fock norm.
pub fn annihilation_power_norm(
    space: &FockSpace,
    h: &Tensor,
    m: usize,
    f: &FockVector,
) -> Result<f64> {
    let mut v = space.admit(f)?;
    for _ in 0..m {
        v = space.annihilate_admitted(h, &v)?;
    }
    space.norm(&v)
}

/// Truncated `‖a⁺(h)‖` over source degrees `0..=max_degree`, and `‖h‖_{ℓ¹}`.
pub fn operator_norm_check_fermion_type(
    space: &FockSpace,
    h: &Tensor,
    max_degree: usize,
) -> Result<(f64, f64)> {
    if !space.kernel().is_fermion_type(space.limits().modulus_one) {
        return Err(Error::Precondition(
            "kernel is not of fermion type (Q(t,t) = -1, |Q| = 1)".into(),
        ));
    }
    let mut norm: f64 = 0.0;
    for n in 0..=max_degree {
        norm = norm.max(space.creation_block_norm(h, n)?);
    }
    Ok((norm, h.l1_norm()))
}
