//! Seeded generators for kernels and tensors used by the property suites.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kernel::{ExchangeKernel, QKernel};
use crate::qsym::{bb_p_n, Limits, Tensor};

pub type SuiteRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn unit_phase(rng: &mut SuiteRng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

/// Hermitian kernel mixing unimodular and strictly contractive entries.
/// Roughly a third of off-diagonal pairs sit on the unit circle; diagonal
/// entries are drawn from `{1, -1}` or the open interval `(-1, 1)`.
pub fn random_hermitian_kernel(rng: &mut SuiteRng, d: usize) -> QKernel {
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for s in 0..d {
        rows[s][s] = Complex64::new(
            match rng.gen_range(0..3) {
                0 => 1.0,
                1 => -1.0,
                _ => rng.gen_range(-0.95..0.95),
            },
            0.0,
        );
        for t in (s + 1)..d {
            let z = if rng.gen_bool(1.0 / 3.0) {
                unit_phase(rng)
            } else {
                unit_phase(rng) * rng.gen_range(0.0..0.95)
            };
            rows[s][t] = z;
            rows[t][s] = z.conj();
        }
    }
    QKernel::from_rows(rows).expect("generated kernel is Hermitian and bounded")
}

/// Real symmetric kernel with entries in `[-1, 1]`, a third of them `±1`.
pub fn random_real_kernel(rng: &mut SuiteRng, d: usize) -> QKernel {
    let mut rows = vec![vec![Complex64::new(0.0, 0.0); d]; d];
    for s in 0..d {
        for t in s..d {
            let x = if rng.gen_bool(1.0 / 3.0) {
                if rng.gen_bool(0.5) {
                    1.0
                } else {
                    -1.0
                }
            } else {
                rng.gen_range(-0.95..0.95)
            };
            rows[s][t] = Complex64::new(x, 0.0);
            rows[t][s] = Complex64::new(x, 0.0);
        }
    }
    QKernel::from_rows(rows).expect("generated kernel is symmetric and bounded")
}

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn random_tensor(rng: &mut SuiteRng, d: usize, n: usize) -> Tensor {
    let len = d.pow(n as u32);
    let data = (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    Tensor::from_vec(d, n, data).expect("length matches")
}

/// Real-valued entries uniform in `[-1, 1)`.
pub fn random_real_tensor(rng: &mut SuiteRng, d: usize, n: usize) -> Tensor {
    let len = d.pow(n as u32);
    let data = (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
        .collect();
    Tensor::from_vec(d, n, data).expect("length matches")
}

/// `ℙ_n g` for a random `g`.
pub fn random_quasisymmetric(
    rng: &mut SuiteRng,
    kernel: &QKernel,
    n: usize,
    limits: &Limits,
) -> Result<Tensor> {
    let g = random_tensor(rng, kernel.dim(), n);
    bb_p_n(kernel, n, limits)?.apply(&g)
}
