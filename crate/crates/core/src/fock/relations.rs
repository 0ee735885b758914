//! Residuals of the `Q`-commutation relations on the truncated Fock space.
//!
//! Each relation is compared degree by degree as matrices acting on
//! `F_n(H) ⊂ H^{⊗n}`; residuals are largest singular values.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::space::FockSpace;
use crate::error::{Error, Result};
use crate::kernel::ExchangeKernel;
use crate::qsym::spectral::op_norm;
use crate::qsym::Tensor;

/// Largest residual together with the source degree where it occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelationResidual {
    pub residual: f64,
    pub degree: usize,
}

impl RelationResidual {
    fn track(&mut self, residual: f64, degree: usize) {
        if residual > self.residual {
            self.residual = residual;
            self.degree = degree;
        }
    }
}

fn basis(d: usize, s: usize) -> Result<Tensor> {
    Tensor::basis(d, &[s])
}

/// `a⁻(e_s) a⁺(e_t) − δ_{st} 1 − Q(s,t) a⁺(e_t) a⁻(e_s)` on source degrees
/// `0..=max_degree`. Uses operators up to degree `max_degree + 1`.
pub fn verify_qcr(
    space: &FockSpace,
    s: usize,
    t: usize,
    max_degree: usize,
) -> Result<RelationResidual> {
    let d = space.base();
    let (es, et) = (basis(d, s)?, basis(d, t)?);
    let q = space.kernel().entry(s, t);
    let mut worst = RelationResidual {
        residual: 0.0,
        degree: 0,
    };
    for n in 0..=max_degree {
        let lhs = space.annihilation_block(&es, n + 1)? * space.creation_block(&et, n)?;
        let mut rhs = if s == t {
            space.operators(n)?.projection.clone()
        } else {
            DMatrix::zeros(lhs.nrows(), lhs.ncols())
        };
        if n >= 1 {
            rhs += space.creation_block(&et, n - 1)? * space.annihilation_block(&es, n)? * q;
        }
        worst.track(op_norm(&(lhs - rhs)), n);
    }
    Ok(worst)
}

/// Residuals of both exchange relations for a pair in `Θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExchangeResidual {
    /// `a⁺(e_s)a⁺(e_t) − Q(t,s) a⁺(e_t)a⁺(e_s)`.
    pub creation: RelationResidual,
    /// `a⁻(e_s)a⁻(e_t) − Q(t,s) a⁻(e_t)a⁻(e_s)`.
    pub annihilation: RelationResidual,
}

impl ExchangeResidual {
    pub fn max(&self) -> f64 {
        self.creation.residual.max(self.annihilation.residual)
    }
}

/// Exchange relations between creators and between annihilators; only
/// asserted for `(s, t) ∈ Θ`, otherwise a precondition error names the
/// pair.
pub fn verify_creation_exchange(
    space: &FockSpace,
    s: usize,
    t: usize,
    max_degree: usize,
) -> Result<ExchangeResidual> {
    let d = space.base();
    let tol = space.limits().modulus_one;
    if s >= d || t >= d {
        return Err(Error::IndexOutOfRange {
            index: s.max(t),
            bound: d,
        });
    }
    if !space.kernel().theta(s, t, tol) {
        return Err(Error::Precondition(format!(
            "pair ({s}, {t}) is not in Θ: |Q| = {}",
            space.kernel().entry(s, t).norm()
        )));
    }
    let (es, et) = (basis(d, s)?, basis(d, t)?);
    let c = space.kernel().entry(t, s);
    let mut creation = RelationResidual {
        residual: 0.0,
        degree: 0,
    };
    let mut annihilation = RelationResidual {
        residual: 0.0,
        degree: 0,
    };
    for n in 0..=max_degree {
        let (lhs, rhs) = creation_pair(space, &es, &et, n)?;
        creation.track(op_norm(&(lhs - rhs * c)), n);
        if n >= 2 {
            let lhs = space.annihilation_block(&es, n - 1)? * space.annihilation_block(&et, n)?;
            let rhs = space.annihilation_block(&et, n - 1)? * space.annihilation_block(&es, n)?;
            annihilation.track(op_norm(&(lhs - rhs * c)), n);
        }
    }
    Ok(ExchangeResidual {
        creation,
        annihilation,
    })
}

fn creation_pair(
    space: &FockSpace,
    es: &Tensor,
    et: &Tensor,
    n: usize,
) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    let lhs = space.creation_block(es, n + 1)? * space.creation_block(et, n)?;
    let rhs = space.creation_block(et, n + 1)? * space.creation_block(es, n)?;
    Ok((lhs, rhs))
}

/// Smallest residual `‖a⁺(e_s)a⁺(e_t) − c a⁺(e_t)a⁺(e_s)‖_F` over unimodular
/// `c`, stacking the degree blocks `0..=max_degree`.
///
/// For matrices `A`, `B` the minimum over `|c| = 1` is
/// `sqrt(‖A‖² + ‖B‖² − 2|⟨B, A⟩|)`.
pub fn best_unimodular_exchange_residual(
    space: &FockSpace,
    s: usize,
    t: usize,
    max_degree: usize,
) -> Result<f64> {
    let d = space.base();
    let (es, et) = (basis(d, s)?, basis(d, t)?);
    let (mut aa, mut bb, mut ab) = (0.0, 0.0, Complex64::new(0.0, 0.0));
    for n in 0..=max_degree {
        let (a, b) = creation_pair(space, &es, &et, n)?;
        aa += a.norm_squared();
        bb += b.norm_squared();
        ab += b.dotc(&a);
    }
    Ok((aa + bb - 2.0 * ab.norm()).max(0.0).sqrt())
}
