//! Symmetric-group machinery: enumeration, inversions, reduced words and the
//! kernel-weighted inversion products `Q_π(t) = ∏_{i<j, π(i)>π(j)} Q(t_i, t_j)`.
//!
//! Permutations are 1-indexed: `images[i - 1] = π(i)`. Tuples of sites are
//! plain slices indexed from 0, so position `i` of the tuple
//! `(t_1, …, t_n)` lives at offset `i - 1`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::ExchangeKernel;

/// Largest degree for which [`all_permutations`] will enumerate `S_n`.
pub const MAX_ENUMERATION_DEGREE: usize = 8;

/// An element of the symmetric group `S_n`, stored in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based images, rejecting anything that is
    /// not a bijection of `{1..n}`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation(images));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[v - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    /// The adjacent transposition `π_j = (j, j+1)` in `S_n`.
    pub fn adjacent(n: usize, j: usize) -> Result<Self> {
        if j == 0 || j >= n {
            return Err(Error::IndexOutOfRange { index: j, bound: n });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(j - 1, j);
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `π(i)` for `i` in `1..=n`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `{(i, j) : i < j, π(i) > π(j)}` in lexicographic order, 1-based.
    pub fn inversions(&self) -> Vec<(usize, usize)> {
        let n = self.degree();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.images[i] > self.images[j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Coxeter length `|π|`, the number of inversions.
    pub fn length(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions `k` (1-based) with `π(k) > π(k+1)`.
    pub fn descents(&self) -> Vec<usize> {
        self.images
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(k, _)| k + 1)
            .collect()
    }

    /// `(π ∘ ρ)(i) = π(ρ(i))`.
    pub fn compose(&self, rho: &Permutation) -> Result<Permutation> {
        if self.degree() != rho.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                got: rho.degree(),
            });
        }
        Ok(Permutation {
            images: rho.images.iter().map(|&r| self.apply(r)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Right multiplication by the adjacent transposition `π_k`; swaps the
    /// images at positions `k` and `k+1`.
    fn times_adjacent(&self, k: usize) -> Permutation {
        let mut images = self.images.clone();
        images.swap(k - 1, k);
        Permutation { images }
    }

    /// A reduced word `[j_1, …, j_m]` with `π = π_{j_1} ⋯ π_{j_m}` and
    /// `m = |π|`.
    ///
    /// Bubble-sort schedule: the leftmost descent `k` of the current
    /// permutation `σ` gives `σ = (σ π_k) π_k` with one inversion fewer, so
    /// letters are peeled off the right end of the word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut current = self.clone();
        let mut peeled = Vec::with_capacity(self.length());
        while let Some(&k) = current.descents().first() {
            peeled.push(k);
            current = current.times_adjacent(k);
        }
        peeled.reverse();
        peeled
    }

    /// Every reduced word of `π`, sorted lexicographically.
    pub fn all_reduced_words(&self) -> Vec<Vec<usize>> {
        fn walk(p: &Permutation, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let descents = p.descents();
            if descents.is_empty() {
                let mut word = suffix.clone();
                word.reverse();
                out.push(word);
                return;
            }
            for k in descents {
                suffix.push(k);
                walk(&p.times_adjacent(k), suffix, out);
                suffix.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Composes `π_{j_1} ⋯ π_{j_m}` in `S_n`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Permutation> {
        let mut p = Permutation::identity(n);
        for &j in word {
            if j == 0 || j >= n {
                return Err(Error::IndexOutOfRange { index: j, bound: n });
            }
            p = p.times_adjacent(j);
        }
        Ok(p)
    }

    /// `t_π = (t_{π(1)}, …, t_{π(n)})`.
    pub fn permute_tuple<T: Copy>(&self, t: &[T]) -> Vec<T> {
        self.images.iter().map(|&v| t[v - 1]).collect()
    }

    /// The permutation `π ⊗ id_k` of degree `n + k`, fixing the trailing slots.
    pub fn extend_by_identity(&self, k: usize) -> Permutation {
        let n = self.degree();
        let mut images = self.images.clone();
        images.extend((n + 1)..=(n + k));
        Permutation { images }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// All `n!` permutations of degree `n`, lexicographic on images.
pub fn all_permutations(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > MAX_ENUMERATION_DEGREE {
        return Err(Error::SizeLimit {
            what: format!("enumeration of S_{n}"),
            limit: MAX_ENUMERATION_DEGREE,
        });
    }
    let mut images: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(factorial(n) as usize);
    loop {
        out.push(Permutation {
            images: images.clone(),
        });
        if !next_lexicographic(&mut images) {
            break;
        }
    }
    Ok(out)
}

fn next_lexicographic(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `Q_π(t) = ∏_{i<j, π(i)>π(j)} Q(t_i, t_j)`; the empty product is 1.
pub fn q_pi_weight<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    pi: &Permutation,
    t: &[usize],
) -> Result<Complex64> {
    if pi.degree() != t.len() {
        return Err(Error::DegreeMismatch {
            expected: pi.degree(),
            got: t.len(),
        });
    }
    let d = kernel.dim();
    if let Some(&bad) = t.iter().find(|&&s| s >= d) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            bound: d,
        });
    }
    Ok(weight_unchecked(kernel, pi.images(), t))
}

/// Inversion product without validation; callers guarantee `t` is in range
/// and has the permutation's degree.
pub(crate) fn weight_unchecked<K: ExchangeKernel + ?Sized>(
    kernel: &K,
    images: &[usize],
    t: &[usize],
) -> Complex64 {
    let n = images.len();
    let mut w = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if images[i] > images[j] {
                w *= kernel.entry(t[i], t[j]);
            }
        }
    }
    w
}
