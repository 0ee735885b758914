//! The Hermitian exchange kernel `Q` on a finite site set `T = {0, …, d-1}`
//! (counting measure), and the derived kernels `R` and `G`.
//!
//! In the counting-measure setting the exceptional null set `E` is empty, so
//! `Q` is defined on all of `T × T`, including the diagonal.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed above 1 when validating `|Q(s,t)| ≤ 1`.
pub const MODULUS_BOUND_SLACK: f64 = 1e-12;

/// Default tolerance for deciding `|Q(s,t)| = 1`.
pub const DEFAULT_MODULUS_ONE_TOL: f64 = 1e-12;

/// Read access to a `d × d` exchange kernel.
///
/// Implemented by [`QKernel`], [`RKernel`] and [`GKernel`] so that the same
/// operator constructions (`Ψ_π`, `Φ_π`, `Γ_π`) serve all three.
pub trait ExchangeKernel {
    fn dim(&self) -> usize;
    fn entry(&self, s: usize, t: usize) -> Complex64;
}

fn is_unimodular(z: Complex64, tol: f64) -> bool {
    (z.norm() - 1.0).abs() <= tol
}

/// A validated Hermitian kernel with entries in the closed unit disc.
#[derive(Debug, Clone, PartialEq)]
pub struct QKernel {
    d: usize,
    entries: Vec<Complex64>,
}

impl QKernel {
    /// Validates a square matrix. Hermitian violations are rejected, never
    /// repaired.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::Parameter(
                "kernel must have at least one site".into(),
            ));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != d {
                return Err(Error::NotSquare {
                    rows: d,
                    row,
                    len: r.len(),
                });
            }
        }
        for s in 0..d {
            for t in 0..d {
                let z = rows[s][t];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::Parameter(format!("non-finite entry at ({s}, {t})")));
                }
                if z.norm() > 1.0 + MODULUS_BOUND_SLACK {
                    return Err(Error::ModulusBound {
                        s,
                        t,
                        modulus: z.norm(),
                    });
                }
            }
        }
        for s in 0..d {
            for t in s..d {
                if rows[s][t] != rows[t][s].conj() {
                    return Err(Error::NotHermitian { s, t });
                }
            }
        }
        Ok(Self {
            d,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// `Q ≡ q` for real `q ∈ [-1, 1]`.
    pub fn constant(q: f64, d: usize) -> Result<Self> {
        if !(-1.0..=1.0).contains(&q) {
            return Err(Error::Parameter(format!(
                "constant kernel needs q in [-1, 1], got {q}"
            )));
        }
        if d == 0 {
            return Err(Error::Parameter(
                "kernel must have at least one site".into(),
            ));
        }
        Ok(Self {
            d,
            entries: vec![Complex64::new(q, 0.0); d * d],
        })
    }

    /// Discrete anyon kernel of fermion type: `q` below the diagonal
    /// (`s > t`), `q̄` above it, `-1` on it.
    pub fn anyon_fermion(q: Complex64, d: usize) -> Result<Self> {
        if !is_unimodular(q, DEFAULT_MODULUS_ONE_TOL) {
            return Err(Error::Parameter(format!(
                "anyon kernel needs |q| = 1, got |q| = {}",
                q.norm()
            )));
        }
        if d == 0 {
            return Err(Error::Parameter(
                "kernel must have at least one site".into(),
            ));
        }
        let mut entries = Vec::with_capacity(d * d);
        for s in 0..d {
            for t in 0..d {
                entries.push(match s.cmp(&t) {
                    std::cmp::Ordering::Greater => q,
                    std::cmp::Ordering::Less => q.conj(),
                    std::cmp::Ordering::Equal => Complex64::new(-1.0, 0.0),
                });
            }
        }
        Ok(Self { d, entries })
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.entries.chunks(self.d).map(|r| r.to_vec()).collect()
    }

    /// True when every entry has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// `Q(t,t) = -1` for all `t` and `|Q| ≡ 1`.
    pub fn is_fermion_type(&self, tol: f64) -> bool {
        (0..self.d).all(|t| (self.entry(t, t) - Complex64::new(-1.0, 0.0)).norm() <= tol)
            && self.entries.iter().all(|&z| is_unimodular(z, tol))
    }

    /// The common value if the kernel is constant.
    pub fn constant_value(&self) -> Option<Complex64> {
        let first = self.entries[0];
        self.entries.iter().all(|&z| z == first).then_some(first)
    }

    /// Recovers `q` if this kernel has the anyon-fermion shape. For `d = 1`
    /// there is no off-diagonal entry and `None` is returned.
    pub fn anyon_parameter(&self, tol: f64) -> Option<Complex64> {
        if self.d < 2 {
            return None;
        }
        let q = self.entry(1, 0);
        let candidate = QKernel::anyon_fermion(q, self.d).ok()?;
        self.entries
            .iter()
            .zip(&candidate.entries)
            .all(|(a, b)| (a - b).norm() <= tol)
            .then_some(q)
    }

    /// `R = Q` on `Θ = {|Q| = 1}` and `0` elsewhere.
    pub fn derive_r(&self, tol: f64) -> RKernel {
        let theta: Vec<bool> = self
            .entries
            .iter()
            .map(|&z| is_unimodular(z, tol))
            .collect();
        let r = self
            .entries
            .iter()
            .zip(&theta)
            .map(|(&z, &on)| if on { z } else { Complex64::new(0.0, 0.0) })
            .collect();
        RKernel {
            d: self.d,
            r,
            theta,
        }
    }

    /// The `Θ` mask: `| |Q(s,t)| - 1 | ≤ tol`.
    pub fn theta(&self, s: usize, t: usize, tol: f64) -> bool {
        is_unimodular(self.entry(s, t), tol)
    }
}

impl ExchangeKernel for QKernel {
    fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    fn entry(&self, s: usize, t: usize) -> Complex64 {
        self.entries[s * self.d + t]
    }
}

/// `Q` restricted to its modulus-one set.
#[derive(Debug, Clone, PartialEq)]
pub struct RKernel {
    d: usize,
    r: Vec<Complex64>,
    theta: Vec<bool>,
}

impl RKernel {
    pub fn theta_mask(&self, s: usize, t: usize) -> bool {
        self.theta[s * self.d + t]
    }

    /// Reapplies the `R` rule to this kernel's own entries.
    pub fn rederive(&self, tol: f64) -> RKernel {
        let theta: Vec<bool> = self.r.iter().map(|&z| is_unimodular(z, tol)).collect();
        let r = self
            .r
            .iter()
            .zip(&theta)
            .map(|(&z, &on)| if on { z } else { Complex64::new(0.0, 0.0) })
            .collect();
        RKernel {
            d: self.d,
            r,
            theta,
        }
    }

    /// `G = R` where `|R| = 1`, `G = 1` where `R = 0`.
    pub fn derive_g(&self) -> GKernel {
        let g = self
            .r
            .iter()
            .zip(&self.theta)
            .map(|(&z, &on)| if on { z } else { Complex64::new(1.0, 0.0) })
            .collect();
        GKernel { d: self.d, g }
    }
}

impl ExchangeKernel for RKernel {
    fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    fn entry(&self, s: usize, t: usize) -> Complex64 {
        self.r[s * self.d + t]
    }
}

/// Unimodular completion of `R`; its `Γ_π` form a unitary representation of
/// `S_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GKernel {
    d: usize,
    g: Vec<Complex64>,
}

impl ExchangeKernel for GKernel {
    fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    fn entry(&self, s: usize, t: usize) -> Complex64 {
        self.g[s * self.d + t]
    }
}

/// True when `K(s,t) = conj(K(t,s))` for all pairs, within `tol`.
pub fn is_hermitian<K: ExchangeKernel + ?Sized>(k: &K, tol: f64) -> bool {
    let d = k.dim();
    (0..d).all(|s| (0..d).all(|t| (k.entry(s, t) - k.entry(t, s).conj()).norm() <= tol))
}

/// Which closed-form kernel a [`KernelSpec`] names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    Constant,
    AnyonFermion,
}

/// JSON kernel description: either explicit row-major entries as `[re, im]`
/// pairs, or a named constructor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KernelSpec {
    Named {
        kind: KernelKind,
        q: [f64; 2],
        d: usize,
    },
    Entries {
        d: usize,
        entries: Vec<Vec<[f64; 2]>>,
    },
}

impl KernelSpec {
    pub fn dim(&self) -> usize {
        match self {
            KernelSpec::Named { d, .. } | KernelSpec::Entries { d, .. } => *d,
        }
    }

    pub fn build(&self) -> Result<QKernel> {
        match self {
            KernelSpec::Named {
                kind: KernelKind::Constant,
                q,
                d,
            } => {
                if q[1] != 0.0 {
                    return Err(Error::Parameter(format!(
                        "constant kernel needs a real q, got imaginary part {}",
                        q[1]
                    )));
                }
                QKernel::constant(q[0], *d)
            }
            KernelSpec::Named {
                kind: KernelKind::AnyonFermion,
                q,
                d,
            } => QKernel::anyon_fermion(Complex64::new(q[0], q[1]), *d),
            KernelSpec::Entries { d, entries } => {
                if entries.len() != *d {
                    return Err(Error::DimensionMismatch {
                        expected: *d,
                        got: entries.len(),
                    });
                }
                let rows = entries
                    .iter()
                    .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                    .collect();
                QKernel::from_rows(rows)
            }
        }
    }
}

impl From<&QKernel> for KernelSpec {
    fn from(k: &QKernel) -> Self {
        KernelSpec::Entries {
            d: k.d,
            entries: k
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}
