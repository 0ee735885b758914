//! The truncated `Q`-deformed Fock space `⊕_{n ≤ N} F_n(H)` with the
//! `n!`-weighted inner product, and the creation/annihilation operators.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{ExchangeKernel, QKernel};
use crate::permgroup::{factorial, MAX_ENUMERATION_DEGREE};
use crate::qsym::spectral::eigenbasis;
use crate::qsym::{
    bb_p_n, dim_of, for_each_tuple, p_n, r_n_operator, tuple_to_index, Limits, Tensor,
};

/// Tolerance for accepting an input component as an element of `Ran(ℙ_n)`.
pub const RANGE_TOL: f64 = 1e-8;

/// What to do with a component that is not quasisymmetric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputPolicy {
    /// Reject with [`Error::NotInRange`].
    #[default]
    Reject,
    /// Replace the component by its projection `ℙ_n f`.
    Project,
}

/// Per-degree operators `P_n`, `ℙ_n`, `R_n`.
#[derive(Debug)]
pub struct DegreeOperators {
    pub symmetrizer: DMatrix<Complex64>,
    pub projection: DMatrix<Complex64>,
    pub recursion: DMatrix<Complex64>,
}

/// A finite graded family `(f⁽⁰⁾, …, f⁽ᴺ⁾)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    d: usize,
    components: Vec<Tensor>,
}

impl FockVector {
    /// `Ω = (1, 0, 0, …)`.
    pub fn vacuum(d: usize) -> Self {
        Self {
            d,
            components: vec![Tensor::scalar(d, Complex64::new(1.0, 0.0))],
        }
    }

    pub fn zero(d: usize, top: usize) -> Self {
        Self {
            d,
            components: (0..=top).map(|n| Tensor::zeros(d, n)).collect(),
        }
    }

    /// The vector with a single nonzero component.
    pub fn homogeneous(f: Tensor) -> Self {
        let d = f.base();
        let n = f.degree();
        let mut components: Vec<Tensor> = (0..n).map(|k| Tensor::zeros(d, k)).collect();
        components.push(f);
        Self { d, components }
    }

    /// Components must have degrees `0, 1, …, N` in order and a common base.
    pub fn from_components(components: Vec<Tensor>) -> Result<Self> {
        let d = components
            .first()
            .map(Tensor::base)
            .ok_or(Error::Parameter("empty Fock vector".into()))?;
        for (n, c) in components.iter().enumerate() {
            if c.degree() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    got: c.degree(),
                });
            }
            if c.base() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: c.base(),
                });
            }
        }
        Ok(Self { d, components })
    }

    pub fn base(&self) -> usize {
        self.d
    }

    /// Highest stored degree `N`.
    pub fn top_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[Tensor] {
        &self.components
    }

    /// Component of degree `n`, zero beyond the stored range.
    pub fn component(&self, n: usize) -> Tensor {
        self.components
            .get(n)
            .cloned()
            .unwrap_or_else(|| Tensor::zeros(self.d, n))
    }

    pub fn add(&self, other: &FockVector) -> Result<FockVector> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        let top = self.top_degree().max(other.top_degree());
        let components = (0..=top)
            .map(|n| self.component(n).add(&other.component(n)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FockVector {
            d: self.d,
            components,
        })
    }

    pub fn scale(&self, c: Complex64) -> FockVector {
        FockVector {
            d: self.d,
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Drops components of degree above `top`.
    pub fn truncate(&mut self, top: usize) {
        self.components.truncate(top + 1);
    }

    fn is_component_zero(&self, n: usize) -> bool {
        self.components
            .get(n)
            .is_none_or(|f| f.data().iter().all(|z| *z == Complex64::new(0.0, 0.0)))
    }
}

/// The Fock space over a fixed kernel, truncated at degree `N`.
///
/// Per-degree operators are built on first use and cached; the cache is
/// `Sync`, so a space can be shared across threads.
#[derive(Debug)]
pub struct FockSpace {
    kernel: QKernel,
    truncation: usize,
    auto_extend: bool,
    policy: InputPolicy,
    limits: Limits,
    cache: Vec<OnceLock<Result<DegreeOperators>>>,
}

impl FockSpace {
    pub fn new(kernel: QKernel, truncation: usize) -> Result<Self> {
        Self::with_limits(kernel, truncation, Limits::default())
    }

    pub fn with_limits(kernel: QKernel, truncation: usize, limits: Limits) -> Result<Self> {
        let max = max_degree(kernel.dim(), &limits);
        if truncation > max {
            return Err(Error::SizeLimit {
                what: format!("truncation degree {truncation} for d = {}", kernel.dim()),
                limit: max,
            });
        }
        Ok(Self {
            kernel,
            truncation,
            auto_extend: false,
            policy: InputPolicy::Reject,
            limits,
            cache: (0..=max).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Allows degrees above the truncation, up to the size cap.
    pub fn auto_extend(mut self, on: bool) -> Self {
        self.auto_extend = on;
        self
    }

    pub fn input_policy(mut self, policy: InputPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn kernel(&self) -> &QKernel {
        &self.kernel
    }

    pub fn base(&self) -> usize {
        self.kernel.dim()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn degree_allowed(&self, n: usize) -> Result<()> {
        if n > self.truncation && !self.auto_extend {
            return Err(Error::TruncationOverflow {
                degree: n,
                truncation: self.truncation,
            });
        }
        if n >= self.cache.len() {
            return Err(Error::SizeLimit {
                what: format!("degree {n} for d = {}", self.base()),
                limit: self.cache.len() - 1,
            });
        }
        Ok(())
    }

    /// `P_n`, `ℙ_n` and `R_n` for degree `n`.
    pub fn operators(&self, n: usize) -> Result<&DegreeOperators> {
        self.degree_allowed(n)?;
        let entry = self.cache[n].get_or_init(|| {
            let k = &self.kernel;
            let lim = &self.limits;
            Ok(DegreeOperators {
                symmetrizer: p_n(k, n, lim)?.into_matrix(),
                projection: bb_p_n(k, n, lim)?.into_matrix(),
                recursion: if n == 0 {
                    DMatrix::identity(1, 1)
                } else {
                    r_n_operator(k, n, lim)?.into_matrix()
                },
            })
        });
        entry.as_ref().map_err(Clone::clone)
    }

    fn check_vector(&self, v: &FockVector) -> Result<()> {
        if v.base() != self.base() {
            return Err(Error::DimensionMismatch {
                expected: self.base(),
                got: v.base(),
            });
        }
        Ok(())
    }

    fn check_one_particle(&self, h: &Tensor) -> Result<()> {
        if h.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: h.degree(),
            });
        }
        if h.base() != self.base() {
            return Err(Error::DimensionMismatch {
                expected: self.base(),
                got: h.base(),
            });
        }
        Ok(())
    }

    /// Enforces membership of every component in `Ran(ℙ_n)` according to the
    /// input policy.
    pub fn admit(&self, v: &FockVector) -> Result<FockVector> {
        self.check_vector(v)?;
        let mut components = Vec::with_capacity(v.components.len());
        for (n, f) in v.components.iter().enumerate() {
            if n < 2 {
                components.push(f.clone());
                continue;
            }
            let projected = &self.operators(n)?.projection * f.data();
            let residual = (&projected - f.data()).norm();
            if residual <= RANGE_TOL * f.norm().max(1.0) {
                components.push(f.clone());
            } else {
                match self.policy {
                    InputPolicy::Reject => {
                        return Err(Error::NotInRange {
                            degree: n,
                            residual,
                        })
                    }
                    InputPolicy::Project => {
                        components.push(Tensor::from_vector(self.base(), n, projected)?)
                    }
                }
            }
        }
        Ok(FockVector { d: v.d, components })
    }

    /// `Σ_n n! ⟨P_n f⁽ⁿ⁾, g⁽ⁿ⁾⟩`, antilinear in `f`.
    pub fn inner(&self, f: &FockVector, g: &FockVector) -> Result<Complex64> {
        self.check_vector(f)?;
        self.check_vector(g)?;
        let top = f.top_degree().max(g.top_degree());
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..=top {
            if f.is_component_zero(n) || g.is_component_zero(n) {
                continue;
            }
            let fn_ = f.component(n);
            let pf = &self.operators(n)?.symmetrizer * fn_.data();
            acc += pf.dotc(g.component(n).data()) * factorial(n) as f64;
        }
        Ok(acc)
    }

    pub fn norm(&self, f: &FockVector) -> Result<f64> {
        Ok(self.inner(f, f)?.re.max(0.0).sqrt())
    }

    /// `a⁺(h)`: `Ω ↦ h`, `f⁽ⁿ⁾ ↦ ℙ_{n+1}(h ⊗ f⁽ⁿ⁾)`.
    pub fn create(&self, h: &Tensor, f: &FockVector) -> Result<FockVector> {
        self.check_one_particle(h)?;
        let f = self.admit(f)?;
        self.create_admitted(h, &f)
    }

    pub(crate) fn create_admitted(&self, h: &Tensor, f: &FockVector) -> Result<FockVector> {
        let d = self.base();
        let mut components = vec![Tensor::zeros(d, 0)];
        for (n, fn_) in f.components.iter().enumerate() {
            let target = n + 1;
            if target > self.truncation && !self.auto_extend {
                if f.is_component_zero(n) {
                    break;
                }
                return Err(Error::TruncationOverflow {
                    degree: target,
                    truncation: self.truncation,
                });
            }
            let hf = h.tensor(fn_)?;
            let out = &self.operators(target)?.projection * hf.data();
            components.push(Tensor::from_vector(d, target, out)?);
        }
        Ok(FockVector { d, components })
    }

    /// `a⁻(h)`, realized as `a⁻(h) ℙ_n g = ℙ_{n-1} A⁻(h) R_n g`.
    pub fn annihilate(&self, h: &Tensor, f: &FockVector) -> Result<FockVector> {
        self.check_one_particle(h)?;
        let f = self.admit(f)?;
        self.annihilate_admitted(h, &f)
    }

    pub(crate) fn annihilate_admitted(&self, h: &Tensor, f: &FockVector) -> Result<FockVector> {
        let d = self.base();
        if f.top_degree() == 0 {
            return Ok(FockVector::zero(d, 0));
        }
        let mut components = Vec::with_capacity(f.top_degree());
        for n in 1..=f.top_degree() {
            let ops_n = self.operators(n)?;
            let rg = Tensor::from_vector(d, n, &ops_n.recursion * f.components[n].data())?;
            let contracted = a_minus_free(h, &rg)?;
            let out = &self.operators(n - 1)?.projection * contracted.data();
            components.push(Tensor::from_vector(d, n - 1, out)?);
        }
        Ok(FockVector { d, components })
    }

    /// Independent realization of `a⁻(h)` from the explicit sum
    /// `Σ_k ℙ_{n-1}[Σ_s h̄(s) ∏_{i<k} Q(s, t_i) f(t_1, …, t_{k-1}, s, t_k, …, t_{n-1})]`.
    pub fn annihilate_direct(&self, h: &Tensor, f: &FockVector) -> Result<FockVector> {
        self.check_one_particle(h)?;
        let f = self.admit(f)?;
        let d = self.base();
        if f.top_degree() == 0 {
            return Ok(FockVector::zero(d, 0));
        }
        let mut components = Vec::with_capacity(f.top_degree());
        for n in 1..=f.top_degree() {
            let fn_ = &f.components[n];
            let mut acc = DVector::zeros(dim_of(d, n - 1));
            let mut full = vec![0; n];
            for_each_tuple(d, n - 1, |i, t| {
                let mut sum = Complex64::new(0.0, 0.0);
                for k in 1..=n {
                    for s in 0..d {
                        let hs = h.data()[s].conj();
                        if hs == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        let mut w = hs;
                        for &ti in &t[..k - 1] {
                            w *= self.kernel.entry(s, ti);
                        }
                        full[..k - 1].copy_from_slice(&t[..k - 1]);
                        full[k - 1] = s;
                        full[k..].copy_from_slice(&t[k - 1..]);
                        sum += w * fn_.data()[tuple_to_index(d, &full)];
                    }
                }
                acc[i] = sum;
            });
            let out = &self.operators(n - 1)?.projection * acc;
            components.push(Tensor::from_vector(d, n - 1, out)?);
        }
        Ok(FockVector { d, components })
    }

    /// Matrix of `a⁺(h)` from degree `n` to `n + 1`, composed with `ℙ_n`
    /// on the right so that it acts on `F_n(H)`.
    pub fn creation_block(&self, h: &Tensor, n: usize) -> Result<DMatrix<Complex64>> {
        self.check_one_particle(h)?;
        let embed = h.data().kronecker(&DMatrix::<Complex64>::identity(
            dim_of(self.base(), n),
            dim_of(self.base(), n),
        ));
        Ok(&self.operators(n + 1)?.projection * embed * &self.operators(n)?.projection)
    }

    /// Matrix of `a⁻(h)` from degree `n ≥ 1` to `n - 1`, composed with `ℙ_n`
    /// on the right.
    pub fn annihilation_block(&self, h: &Tensor, n: usize) -> Result<DMatrix<Complex64>> {
        self.check_one_particle(h)?;
        if n == 0 {
            return Err(Error::Parameter("annihilation block needs n >= 1".into()));
        }
        let d = self.base();
        let contract = h
            .data()
            .adjoint()
            .kronecker(&DMatrix::<Complex64>::identity(
                dim_of(d, n - 1),
                dim_of(d, n - 1),
            ));
        let ops = self.operators(n)?;
        Ok(&self.operators(n - 1)?.projection * contract * &ops.recursion * &ops.projection)
    }

    /// Norm of `a⁺(h) : F_n(H) → F_{n+1}(H)` in the Fock metrics, i.e. the
    /// square root of the largest generalized eigenvalue of
    /// `A* M_{n+1} A` against `M_n` on `Ran(ℙ_n)` with `M_k = k! P_k`.
    pub fn creation_block_norm(&self, h: &Tensor, n: usize) -> Result<f64> {
        let a = self.creation_block(h, n)?;
        let ops_n = self.operators(n)?;
        let ops_next = self.operators(n + 1)?;
        let basis = eigenbasis(&ops_n.projection, |l| l > 0.5);
        if basis.ncols() == 0 {
            return Ok(0.0);
        }
        let gram = basis.adjoint()
            * &ops_n.symmetrizer
            * &basis
            * Complex64::new(factorial(n) as f64, 0.0);
        let target = basis.adjoint()
            * a.adjoint()
            * &ops_next.symmetrizer
            * &a
            * &basis
            * Complex64::new(factorial(n + 1) as f64, 0.0);
        let inv_sqrt = inverse_sqrt(&gram)?;
        let whitened = &inv_sqrt * target * &inv_sqrt;
        let top = crate::qsym::spectral::hermitian_eigenvalues(&whitened)
            .last()
            .copied()
            .unwrap_or(0.0);
        Ok(top.max(0.0).sqrt())
    }
}

fn inverse_sqrt(m: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>> {
    let eig = nalgebra::SymmetricEigen::new((m + m.adjoint()) * Complex64::new(0.5, 0.0));
    let dim = m.nrows();
    let mut out = DMatrix::zeros(dim, dim);
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l <= 0.0 {
            return Err(Error::Precondition(format!(
                "Fock metric not positive on F_n (eigenvalue {l:e})"
            )));
        }
        let v = eig.eigenvectors.column(i);
        out += (&v * v.adjoint()) * Complex64::new(1.0 / l.sqrt(), 0.0);
    }
    Ok(out)
}

/// Largest degree whose tensor space fits under the size cap (and whose
/// symmetric group can still be enumerated).
pub fn max_degree(d: usize, limits: &Limits) -> usize {
    (0..=MAX_ENUMERATION_DEGREE)
        .take_while(|&n| limits.check(d, n).is_ok())
        .last()
        .unwrap_or(0)
}

/// `(A⁻(h) g)(t_1, …, t_{n-1}) = Σ_s h̄(s) g(s, t_1, …, t_{n-1})`.
pub fn a_minus_free(h: &Tensor, g: &Tensor) -> Result<Tensor> {
    if h.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            got: h.degree(),
        });
    }
    if g.degree() == 0 {
        return Err(Error::Parameter(
            "A⁻(h) needs a tensor of degree >= 1".into(),
        ));
    }
    let d = h.base();
    if g.base() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: g.base(),
        });
    }
    let rest = dim_of(d, g.degree() - 1);
    let mut out = DVector::zeros(rest);
    for s in 0..d {
        let hs = h.data()[s].conj();
        out += g.data().rows(s * rest, rest) * hs;
    }
    Tensor::from_vector(d, g.degree() - 1, out)
}
