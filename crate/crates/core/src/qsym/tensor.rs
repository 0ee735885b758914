use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on `d^n`, the dimension of `H^{⊗n}`.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Numerical limits shared by every matrix construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest admissible `d^n`.
    pub size_cap: usize,
    /// Tolerance for `|Q(s,t)| = 1`.
    pub modulus_one: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            size_cap: DEFAULT_SIZE_CAP,
            modulus_one: crate::kernel::DEFAULT_MODULUS_ONE_TOL,
        }
    }
}

impl Limits {
    /// `d^n`, or a size-limit error if it exceeds the cap.
    pub fn check(&self, d: usize, n: usize) -> Result<usize> {
        match checked_pow(d, n) {
            Some(dim) if dim <= self.size_cap => Ok(dim),
            _ => Err(Error::SizeLimit {
                what: format!("dimension {d}^{n}"),
                limit: self.size_cap,
            }),
        }
    }
}

pub(crate) fn checked_pow(d: usize, n: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc.checked_mul(d)?;
    }
    Some(acc)
}

/// Big-endian codec: `(t_1, …, t_n) ↦ Σ t_i d^{n-i}`.
#[inline]
pub fn tuple_to_index(d: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &s| acc * d + s)
}

/// Inverse of [`tuple_to_index`], writing into `out` (length `n`).
#[inline]
pub fn index_to_tuple(d: usize, mut index: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
}

/// Iterates all tuples of `T^n` in index order.
pub(crate) fn for_each_tuple(d: usize, n: usize, mut f: impl FnMut(usize, &[usize])) {
    let dim = checked_pow(d, n).expect("dimension overflow");
    let mut t = vec![0; n];
    for i in 0..dim {
        index_to_tuple(d, i, &mut t);
        f(i, &t);
    }
}

/// A degree-`n` element of `H^{⊗n}` with `H = ℓ²({0..d-1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    n: usize,
    d: usize,
    data: DVector<Complex64>,
}

impl Tensor {
    pub fn zeros(d: usize, n: usize) -> Self {
        let dim = checked_pow(d, n).expect("dimension overflow");
        Self {
            n,
            d,
            data: DVector::zeros(dim),
        }
    }

    /// The degree-0 tensor with value `c`.
    pub fn scalar(d: usize, c: Complex64) -> Self {
        Self {
            n: 0,
            d,
            data: DVector::from_element(1, c),
        }
    }

    pub fn from_vec(d: usize, n: usize, data: Vec<Complex64>) -> Result<Self> {
        let dim = checked_pow(d, n).ok_or(Error::SizeLimit {
            what: "tensor".into(),
            limit: usize::MAX,
        })?;
        if data.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: data.len(),
            });
        }
        Ok(Self {
            n,
            d,
            data: DVector::from_vec(data),
        })
    }

    pub fn from_vector(d: usize, n: usize, data: DVector<Complex64>) -> Result<Self> {
        let dim = checked_pow(d, n).ok_or(Error::SizeLimit {
            what: "tensor".into(),
            limit: usize::MAX,
        })?;
        if data.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: data.len(),
            });
        }
        Ok(Self { n, d, data })
    }

    /// `e_{t_1} ⊗ ⋯ ⊗ e_{t_n}`.
    pub fn basis(d: usize, t: &[usize]) -> Result<Self> {
        if let Some(&bad) = t.iter().find(|&&s| s >= d) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                bound: d,
            });
        }
        let mut out = Self::zeros(d, t.len());
        out.data[tuple_to_index(d, t)] = Complex64::new(1.0, 0.0);
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> usize {
        self.d
    }

    pub fn data(&self) -> &DVector<Complex64> {
        &self.data
    }

    pub fn into_data(self) -> DVector<Complex64> {
        self.data
    }

    /// `f(t_1, …, t_n)`.
    pub fn get(&self, t: &[usize]) -> Complex64 {
        self.data[tuple_to_index(self.d, t)]
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Tensor) -> Result<Tensor> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        Ok(Tensor {
            n: self.n + other.n,
            d: self.d,
            data: self.data.kronecker(&other.data),
        })
    }

    /// `h^{⊗m}`.
    pub fn power(&self, m: usize) -> Tensor {
        let mut out = Tensor::scalar(self.d, Complex64::new(1.0, 0.0));
        for _ in 0..m {
            out = out.tensor(self).expect("same base");
        }
        out
    }

    /// Plain `H^{⊗n}` inner product, antilinear in `self`.
    pub fn inner(&self, other: &Tensor) -> Result<Complex64> {
        self.same_shape(other)?;
        Ok(self.data.dotc(&other.data))
    }

    pub fn norm(&self) -> f64 {
        self.data.norm()
    }

    /// `Σ_t |h(t)|`.
    pub fn l1_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).sum()
    }

    pub fn scale(&self, c: Complex64) -> Tensor {
        Tensor {
            n: self.n,
            d: self.d,
            data: &self.data * c,
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.same_shape(other)?;
        Ok(Tensor {
            n: self.n,
            d: self.d,
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.same_shape(other)?;
        Ok(Tensor {
            n: self.n,
            d: self.d,
            data: &self.data - &other.data,
        })
    }

    fn same_shape(&self, other: &Tensor) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }
}

/// A linear operator on `H^{⊗n}` as a dense `d^n × d^n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    n: usize,
    d: usize,
    data: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn new(d: usize, n: usize, data: DMatrix<Complex64>) -> Result<Self> {
        let dim = checked_pow(d, n).ok_or(Error::SizeLimit {
            what: "operator".into(),
            limit: usize::MAX,
        })?;
        if data.nrows() != dim || data.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: data.nrows().max(data.ncols()),
            });
        }
        Ok(Self { n, d, data })
    }

    pub fn identity(d: usize, n: usize) -> Self {
        let dim = checked_pow(d, n).expect("dimension overflow");
        Self {
            n,
            d,
            data: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(d: usize, n: usize) -> Self {
        let dim = checked_pow(d, n).expect("dimension overflow");
        Self {
            n,
            d,
            data: DMatrix::zeros(dim, dim),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            n: self.n,
            d: self.d,
            data: self.data.adjoint(),
        }
    }

    /// Operator product `self · other`.
    pub fn compose(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.same_shape(other)?;
        Ok(OperatorMatrix {
            n: self.n,
            d: self.d,
            data: &self.data * &other.data,
        })
    }

    /// `self ⊗ other` acting on `H^{⊗(n+m)}`, `self` on the leading slots.
    pub fn tensor(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        Ok(OperatorMatrix {
            n: self.n + other.n,
            d: self.d,
            data: self.data.kronecker(&other.data),
        })
    }

    pub fn apply(&self, f: &Tensor) -> Result<Tensor> {
        if f.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                got: f.degree(),
            });
        }
        if f.base() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: f.base(),
            });
        }
        Tensor::from_vector(self.d, self.n, &self.data * f.data())
    }

    fn same_shape(&self, other: &OperatorMatrix) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(())
    }
}
