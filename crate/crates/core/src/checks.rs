//! Residual computations for the structural identities of `Ψ_k`, `P_n`,
//! `ℙ_n` and `R_n`, plus the fixed kernel families used by the suites.
//!
//! Every check returns the largest residual found together with a short
//! witness naming where it occurred.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Result;
use crate::kernel::{ExchangeKernel, QKernel};
use crate::permgroup::all_permutations;
use crate::qsym::spectral::{kernel_projector, min_eigenvalue, op_norm, range_projector};
use crate::qsym::{
    bb_p_n, embed, ker_projection_e_k, p_n, psi_k, psi_pi, psi_word, quasisym_product,
    r_n_operator, Limits, OperatorMatrix, Tensor,
};
use crate::random::{random_hermitian_kernel, SuiteRng};

/// Largest residual seen so far and where.
#[derive(Debug, Clone, PartialEq)]
pub struct Worst {
    pub residual: f64,
    pub witness: Option<String>,
}

impl Default for Worst {
    fn default() -> Self {
        Self {
            residual: 0.0,
            witness: None,
        }
    }
}

impl Worst {
    /// A NaN residual is sticky so that it is never hidden.
    pub fn track(&mut self, residual: f64, witness: impl FnOnce() -> String) {
        let replace = self.witness.is_none()
            || (!self.residual.is_nan() && (residual.is_nan() || residual > self.residual));
        if replace {
            self.residual = residual;
            self.witness = Some(witness());
        }
    }

    pub fn merge(&mut self, other: Worst) {
        if let Some(w) = other.witness {
            self.track(other.residual, || w);
        }
    }

    pub fn within(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

fn diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    op_norm(&(a - b))
}

/// `Ψ_k* = Ψ_k`, `Ψ_kΨ_l = Ψ_lΨ_k` for `|k−l| ≥ 2` and
/// `Ψ_kΨ_{k+1}Ψ_k = Ψ_{k+1}Ψ_kΨ_{k+1}` on `H^{⊗n}`.
pub fn braid_residual<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    n: usize,
    limits: &Limits,
) -> Result<Worst> {
    let mut worst = Worst::default();
    if n < 2 {
        return Ok(worst);
    }
    let psi = (1..n)
        .map(|k| psi_k(kernel, n, k, limits))
        .collect::<Result<Vec<_>>>()?;
    let m = |k: usize| psi[k - 1].matrix();
    for k in 1..n {
        worst.track(diff(m(k), &m(k).adjoint()), || {
            format!("n={n}: Ψ_{k} not self-adjoint")
        });
        for l in (k + 2)..n {
            worst.track(diff(&(m(k) * m(l)), &(m(l) * m(k))), || {
                format!("n={n}: Ψ_{k}, Ψ_{l} do not commute")
            });
        }
        if k + 1 < n {
            let lhs = m(k) * m(k + 1) * m(k);
            let rhs = m(k + 1) * m(k) * m(k + 1);
            worst.track(diff(&lhs, &rhs), || {
                format!("n={n}: braid relation at k={k}")
            });
        }
    }
    Ok(worst)
}

/// Every reduced word of every `π ∈ S_n` yields the same product as the
/// direct formula for `Ψ_π`.
pub fn psi_pi_welldef_residual<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    n: usize,
    limits: &Limits,
) -> Result<Worst> {
    let mut worst = Worst::default();
    for pi in all_permutations(n)? {
        let direct = psi_pi(kernel, &pi, limits)?;
        for word in pi.all_reduced_words() {
            let product = psi_word(kernel, n, &word, limits)?;
            worst.track(diff(direct.matrix(), product.matrix()), || {
                format!("π={pi}, word={word:?}")
            });
        }
    }
    Ok(worst)
}

/// Smallest eigenvalue of `P_n`.
pub fn pn_min_eigenvalue<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    n: usize,
    limits: &Limits,
) -> Result<f64> {
    Ok(min_eigenvalue(p_n(kernel, n, limits)?.matrix()))
}

/// Residuals of the projection laws for `ℙ_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionLaws {
    /// `ℙ² = ℙ = ℙ*`, `ℙP = Pℙ = P`.
    pub algebraic: Worst,
    /// Spectral range projector of `P_n` against `ℙ_n`.
    pub spectral: Worst,
}

pub fn projection_laws(
    kernel: &QKernel,
    n: usize,
    spectral_zero: f64,
    limits: &Limits,
) -> Result<ProjectionLaws> {
    let bb = bb_p_n(kernel, n, limits)?.into_matrix();
    let p = p_n(kernel, n, limits)?.into_matrix();
    let mut algebraic = Worst::default();
    algebraic.track(diff(&(&bb * &bb), &bb), || format!("n={n}: ℙ² ≠ ℙ"));
    algebraic.track(diff(&bb.adjoint(), &bb), || format!("n={n}: ℙ* ≠ ℙ"));
    algebraic.track(diff(&(&bb * &p), &p), || format!("n={n}: ℙP ≠ P"));
    algebraic.track(diff(&(&p * &bb), &p), || format!("n={n}: Pℙ ≠ P"));
    let mut spectral = Worst::default();
    spectral.track(diff(&range_projector(&p, spectral_zero), &bb), || {
        format!("n={n}: Ran(P) projector ≠ ℙ")
    });
    Ok(ProjectionLaws {
        algebraic,
        spectral,
    })
}

/// Projector onto `Ker(P_n)` against the projector onto
/// `span ⋃_k Ran(E_k)`.
pub fn kernel_theorem_residual(
    kernel: &QKernel,
    n: usize,
    spectral_zero: f64,
    limits: &Limits,
) -> Result<Worst> {
    let p = p_n(kernel, n, limits)?.into_matrix();
    let ker = kernel_projector(&p, spectral_zero);
    let dim = p.nrows();
    let mut gram = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 1..n {
        let e = ker_projection_e_k(kernel, n, k, limits)?.into_matrix();
        gram += &e * e.adjoint();
    }
    let span = range_projector(&gram, spectral_zero);
    let mut worst = Worst::default();
    worst.track(diff(&ker, &span), || {
        format!("n={n}: Ker(P) ≠ span Ran(E_k)")
    });
    Ok(worst)
}

/// `‖(n+1)P_{n+1} − (1 ⊗ P_n) R_{n+1}‖`.
pub fn recursion_residual<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    n: usize,
    limits: &Limits,
) -> Result<Worst> {
    let lhs = p_n(kernel, n + 1, limits)?.into_matrix() * Complex64::new((n + 1) as f64, 0.0);
    let one_p = embed(&p_n(kernel, n, limits)?, 1, 0, limits)?;
    let rhs = one_p
        .compose(&r_n_operator(kernel, n + 1, limits)?)?
        .into_matrix();
    let mut worst = Worst::default();
    worst.track(diff(&lhs, &rhs), || format!("n={n}"));
    Ok(worst)
}

/// `ℙ_n(ℙ_k ⊗ ℙ_{n−k}) = ℙ_n` for `1 ≤ k ≤ n−1`.
pub fn tensor_factor_residual(kernel: &QKernel, n: usize, limits: &Limits) -> Result<Worst> {
    let bb = bb_p_n(kernel, n, limits)?;
    let mut worst = Worst::default();
    for k in 1..n {
        let factor = bb_p_n(kernel, k, limits)?.tensor(&bb_p_n(kernel, n - k, limits)?)?;
        let lhs = bb.compose(&factor)?;
        worst.track(diff(lhs.matrix(), bb.matrix()), || format!("n={n}, k={k}"));
    }
    Ok(worst)
}

/// `‖(f ⊛ g) ⊛ h − f ⊛ (g ⊛ h)‖`.
pub fn associativity_residual(
    kernel: &QKernel,
    f: &Tensor,
    g: &Tensor,
    h: &Tensor,
    limits: &Limits,
) -> Result<f64> {
    let left = quasisym_product(kernel, &quasisym_product(kernel, f, g, limits)?, h, limits)?;
    let right = quasisym_product(kernel, f, &quasisym_product(kernel, g, h, limits)?, limits)?;
    Ok(left.sub(&right)?.norm())
}

/// `Γ_πΓ_ν = Γ_{πν}` for all `π, ν ∈ S_n`, with `Γ` built from `G`.
pub fn g_representation_residual(
    kernel: &QKernel,
    n: usize,
    tol: f64,
    limits: &Limits,
) -> Result<Worst> {
    let g = kernel.derive_r(tol).derive_g();
    let perms = all_permutations(n)?;
    let gammas = perms
        .iter()
        .map(|p| psi_pi(&g, p, limits))
        .collect::<Result<Vec<OperatorMatrix>>>()?;
    let mut worst = Worst::default();
    for (i, pi) in perms.iter().enumerate() {
        for (j, nu) in perms.iter().enumerate() {
            let prod = pi.compose(nu)?;
            let k = perms
                .iter()
                .position(|p| *p == prod)
                .expect("S_n is closed");
            let lhs = gammas[i].compose(&gammas[j])?;
            worst.track(diff(lhs.matrix(), gammas[k].matrix()), || {
                format!("π={pi}, ν={nu}")
            });
        }
    }
    Ok(worst)
}

/// The free, bosonic, fermionic and `q = i` anyonic kernels on `d` sites.
pub fn special_kernels(d: usize) -> Result<Vec<(String, QKernel)>> {
    Ok(vec![
        ("constant q=0".into(), QKernel::constant(0.0, d)?),
        ("constant q=1".into(), QKernel::constant(1.0, d)?),
        ("constant q=-1".into(), QKernel::constant(-1.0, d)?),
        (
            "anyon_fermion q=i".into(),
            QKernel::anyon_fermion(Complex64::new(0.0, 1.0), d)?,
        ),
    ])
}

/// One random kernel with mixed `|Q|`, constant `q ∈ {−0.9, 0, 0.7}` and
/// anyon fermion kernels with `q ∈ {1, −1, i, e^{2πi/3}}`.
pub fn relation_test_kernels(rng: &mut SuiteRng, d: usize) -> Result<Vec<(String, QKernel)>> {
    let mut out = vec![("random mixed".to_string(), random_hermitian_kernel(rng, d))];
    for q in [-0.9, 0.0, 0.7] {
        out.push((format!("constant q={q}"), QKernel::constant(q, d)?));
    }
    let anyons = [
        ("1", Complex64::new(1.0, 0.0)),
        ("-1", Complex64::new(-1.0, 0.0)),
        ("i", Complex64::new(0.0, 1.0)),
        ("e^{2πi/3}", Complex64::from_polar(1.0, 2.0 * PI / 3.0)),
    ];
    for (name, q) in anyons {
        out.push((
            format!("anyon_fermion q={name}"),
            QKernel::anyon_fermion(q, d)?,
        ));
    }
    Ok(out)
}
