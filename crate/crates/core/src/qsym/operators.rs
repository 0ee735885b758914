//! Matrix realizations of `Ψ_k`, `Ψ_π`, `P_n`, `ℙ_n`, `R_n` and the
//! projections `E_k` onto `Ker(1 + Ψ_k)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::tensor::{checked_pow, for_each_tuple, tuple_to_index, Limits, OperatorMatrix, Tensor};
use crate::error::{Error, Result};
use crate::kernel::{ExchangeKernel, QKernel, RKernel};
use crate::permgroup::{all_permutations, factorial, weight_unchecked, Permutation};

fn check_slot(n: usize, k: usize) -> Result<()> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k, bound: n });
    }
    Ok(())
}

/// `(Ψ_k f)(t) = Q(t_k, t_{k+1}) f(t_1, …, t_{k+1}, t_k, …, t_n)`.
pub fn psi_k<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    n: usize,
    k: usize,
    limits: &Limits,
) -> Result<OperatorMatrix> {
    check_slot(n, k)?;
    let d = kernel.dim();
    let dim = limits.check(d, n)?;
    let mut m = DMatrix::zeros(dim, dim);
    let mut swapped = vec![0; n];
    for_each_tuple(d, n, |i, t| {
        swapped.copy_from_slice(t);
        swapped.swap(k - 1, k);
        m[(i, tuple_to_index(d, &swapped))] += kernel.entry(t[k - 1], t[k]);
    });
    OperatorMatrix::new(d, n, m)
}

/// `(Ψ_π f)(t) = Q_{π⁻¹}(t) f(t_π)`, built from the closed formula.
pub fn psi_pi<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    pi: &Permutation,
    limits: &Limits,
) -> Result<OperatorMatrix> {
    let n = pi.degree();
    let d = kernel.dim();
    let dim = limits.check(d, n)?;
    let inv = pi.inverse();
    let mut m = DMatrix::zeros(dim, dim);
    for_each_tuple(d, n, |i, t| {
        let j = tuple_to_index(d, &pi.permute_tuple(t));
        m[(i, j)] += weight_unchecked(kernel, inv.images(), t);
    });
    OperatorMatrix::new(d, n, m)
}

/// `Ψ_{j_1} ⋯ Ψ_{j_m}` as a product of adjacent-slot matrices.
pub fn psi_word<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    n: usize,
    word: &[usize],
    limits: &Limits,
) -> Result<OperatorMatrix> {
    let d = kernel.dim();
    limits.check(d, n)?;
    let mut acc = OperatorMatrix::identity(d, n);
    for &j in word {
        acc = acc.compose(&psi_k(kernel, n, j, limits)?)?;
    }
    Ok(acc)
}

/// `P_n = (1/n!) Σ_π Ψ_π`; `P_0` and `P_1` are identities.
pub fn p_n<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    n: usize,
    limits: &Limits,
) -> Result<OperatorMatrix> {
    let d = kernel.dim();
    let dim = limits.check(d, n)?;
    if n <= 1 {
        return Ok(OperatorMatrix::identity(d, n));
    }
    let perms = all_permutations(n)?;
    let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();
    let scale = 1.0 / factorial(n) as f64;
    let mut m = DMatrix::zeros(dim, dim);
    for_each_tuple(d, n, |i, t| {
        for (pi, inv) in perms.iter().zip(&inverses) {
            let j = tuple_to_index(d, &pi.permute_tuple(t));
            m[(i, j)] += weight_unchecked(kernel, inv.images(), t) * scale;
        }
    });
    OperatorMatrix::new(d, n, m)
}

/// `S_n¹(t) = {π : |R_{π⁻¹}(t)| = 1}` and `c_n(t) = |S_n¹(t)|`.
///
/// `R` only takes values in `{0} ∪ S¹`, so membership is decided by the
/// `Θ` mask on the inversion pairs of `π⁻¹`.
pub fn s_n_1(r: &RKernel, t: &[usize]) -> Result<(Vec<Permutation>, usize)> {
    let d = r.dim();
    if let Some(&bad) = t.iter().find(|&&s| s >= d) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            bound: d,
        });
    }
    let n = t.len();
    if n == 0 {
        return Ok((Vec::new(), 1));
    }
    let members: Vec<Permutation> = all_permutations(n)?
        .into_iter()
        .filter(|pi| in_s_n_1(r, &pi.inverse(), t))
        .collect();
    let c = members.len();
    Ok((members, c))
}

fn in_s_n_1(r: &RKernel, inv: &Permutation, t: &[usize]) -> bool {
    inv.inversions()
        .iter()
        .all(|&(i, j)| r.theta_mask(t[i - 1], t[j - 1]))
}

/// The orthogonal projection onto the `Q`-quasisymmetric subspace,
/// `(ℙ_n f)(t) = (1/c_n(t)) Σ_{π ∈ S_n¹(t)} R_{π⁻¹}(t) f(t_π)`,
/// assembled row by row from the pointwise formula.
///
/// Fails with [`Error::OrbitInconsistency`] if `c_n(t_π) ≠ c_n(t)` for some
/// `π ∈ S_n¹(t)`.
pub fn bb_p_n(kernel: &QKernel, n: usize, limits: &Limits) -> Result<OperatorMatrix> {
    let d = kernel.dim();
    let dim = limits.check(d, n)?;
    if n <= 1 {
        return Ok(OperatorMatrix::identity(d, n));
    }
    let r = kernel.derive_r(limits.modulus_one);
    let perms = all_permutations(n)?;
    let inverses: Vec<Permutation> = perms.iter().map(Permutation::inverse).collect();

    // Per-row members of S_n¹(t) as (column, weight) pairs.
    let mut rows: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(dim);
    for_each_tuple(d, n, |_, t| {
        let row = perms
            .iter()
            .zip(&inverses)
            .filter(|(_, inv)| in_s_n_1(&r, inv, t))
            .map(|(pi, inv)| {
                (
                    tuple_to_index(d, &pi.permute_tuple(t)),
                    weight_unchecked(&r, inv.images(), t),
                )
            })
            .collect();
        rows.push(row);
    });

    let mut m = DMatrix::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        let c = row.len();
        // column j is the index of t_π, so rows[j].len() is c_n(t_π)
        if row.iter().any(|&(j, _)| rows[j].len() != c) {
            let mut t = vec![0; n];
            super::tensor::index_to_tuple(d, i, &mut t);
            return Err(Error::OrbitInconsistency { tuple: t });
        }
        let scale = 1.0 / c as f64;
        for &(j, w) in row {
            m[(i, j)] += w * scale;
        }
    }
    OperatorMatrix::new(d, n, m)
}

/// `R_n = 1 + Ψ_1 + Ψ_1Ψ_2 + ⋯ + Ψ_1⋯Ψ_{n-1}`.
pub fn r_n_operator<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    n: usize,
    limits: &Limits,
) -> Result<OperatorMatrix> {
    let d = kernel.dim();
    limits.check(d, n)?;
    if n == 0 {
        return Err(Error::Parameter("R_n is defined for n >= 1".into()));
    }
    let mut term = OperatorMatrix::identity(d, n);
    let mut sum = term.matrix().clone();
    for k in 1..n {
        term = term.compose(&psi_k(kernel, n, k, limits)?)?;
        sum += term.matrix();
    }
    OperatorMatrix::new(d, n, sum)
}

/// Orthogonal projection onto `Ker(1 + Ψ_k)`:
/// `(E_k f)(t) = ½ χ_{T_k}(t) [f(t) − Q(t_k, t_{k+1}) f(…, t_{k+1}, t_k, …)]`.
pub fn ker_projection_e_k(
    kernel: &QKernel,
    n: usize,
    k: usize,
    limits: &Limits,
) -> Result<OperatorMatrix> {
    check_slot(n, k)?;
    let d = kernel.dim();
    let dim = limits.check(d, n)?;
    let mut m = DMatrix::zeros(dim, dim);
    let mut swapped = vec![0; n];
    for_each_tuple(d, n, |i, t| {
        let (a, b) = (t[k - 1], t[k]);
        if !kernel.theta(a, b, limits.modulus_one) {
            return;
        }
        swapped.copy_from_slice(t);
        swapped.swap(k - 1, k);
        m[(i, i)] += Complex64::new(0.5, 0.0);
        m[(i, tuple_to_index(d, &swapped))] -= kernel.entry(a, b) * 0.5;
    });
    OperatorMatrix::new(d, n, m)
}

/// Outcome of a quasisymmetry check.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasisymCheck {
    pub holds: bool,
    pub max_residual: f64,
    /// Slot `k` and tuple achieving the largest residual, if any constraint
    /// was evaluated.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// Checks `f(t) = Q(t_k, t_{k+1}) f(…, t_{k+1}, t_k, …)` for every `k` and
/// every tuple with `(t_k, t_{k+1}) ∈ Θ`.
pub fn quasisym_check(
    kernel: &QKernel,
    f: &Tensor,
    tol: f64,
    modulus_one: f64,
) -> Result<QuasisymCheck> {
    let d = kernel.dim();
    if f.base() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: f.base(),
        });
    }
    let n = f.degree();
    let mut max_residual = 0.0;
    let mut witness = None;
    let mut swapped = vec![0; n];
    for k in 1..n {
        for_each_tuple(d, n, |i, t| {
            let (a, b) = (t[k - 1], t[k]);
            if !kernel.theta(a, b, modulus_one) {
                return;
            }
            swapped.copy_from_slice(t);
            swapped.swap(k - 1, k);
            let res = (f.data()[i] - kernel.entry(a, b) * f.get(&swapped)).norm();
            if witness.is_none() || res > max_residual {
                max_residual = res;
                witness = Some((k, t.to_vec()));
            }
        });
    }
    Ok(QuasisymCheck {
        holds: max_residual <= tol,
        max_residual,
        witness,
    })
}

/// `f ⊛ g = ℙ_{n+m}(f ⊗ g)`.
pub fn quasisym_product(
    kernel: &QKernel,
    f: &Tensor,
    g: &Tensor,
    limits: &Limits,
) -> Result<Tensor> {
    let fg = f.tensor(g)?;
    bb_p_n(kernel, fg.degree(), limits)?.apply(&fg)
}

/// `1_k ⊗ A ⊗ 1_m` for an operator `A` on `H^{⊗n}`.
pub fn embed(
    op: &OperatorMatrix,
    before: usize,
    after: usize,
    limits: &Limits,
) -> Result<OperatorMatrix> {
    let d = op.base();
    let n = before + op.degree() + after;
    limits.check(d, n)?;
    let left = OperatorMatrix::identity(d, before);
    let right = OperatorMatrix::identity(d, after);
    left.tensor(op)?.tensor(&right)
}

pub(crate) fn dim_of(d: usize, n: usize) -> usize {
    checked_pow(d, n).expect("dimension overflow")
}
