//! Words in creation, annihilation and field operators, the vacuum state
//! `τ(p) = ⟨pΩ, Ω⟩` and traciality residuals.

use num_complex::Complex64;
use rand::Rng;

use super::space::{FockSpace, FockVector};
use crate::error::{Error, Result};
use crate::qsym::Tensor;
use crate::random::{random_real_tensor, SuiteRng};

/// One factor of a word.
#[derive(Debug, Clone, PartialEq)]
pub enum Letter {
    /// `a⁺(h)`
    Create(Tensor),
    /// `a⁻(h)`
    Annihilate(Tensor),
    /// `B(h) = a⁺(h) + a⁻(h)`
    Field(Tensor),
}

impl Letter {
    pub fn vector(&self) -> &Tensor {
        match self {
            Letter::Create(h) | Letter::Annihilate(h) | Letter::Field(h) => h,
        }
    }
}

/// A product `L_1 L_2 ⋯ L_k`, applied to a vector right to left.
#[derive(Debug, Clone, PartialEq)]
pub struct WickWord(Vec<Letter>);

impl WickWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        let d = letters
            .first()
            .ok_or(Error::Parameter("empty word".into()))?
            .vector()
            .base();
        for l in &letters {
            let h = l.vector();
            if h.degree() != 1 {
                return Err(Error::DegreeMismatch {
                    expected: 1,
                    got: h.degree(),
                });
            }
            if h.base() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: h.base(),
                });
            }
        }
        Ok(Self(letters))
    }

    /// `B(φ)^k`.
    pub fn field_power(phi: &Tensor, k: usize) -> Result<Self> {
        Self::new(vec![Letter::Field(phi.clone()); k])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self · other`.
    pub fn concat(&self, other: &WickWord) -> WickWord {
        WickWord(self.0.iter().chain(&other.0).cloned().collect())
    }
}

/// Applies `word` to `f`, keeping after each letter only degrees up to
/// `keep_degree(remaining)`, where `remaining` is the number of letters still
/// to be applied. Creation acts only on components whose image survives.
fn apply_pruned(
    space: &FockSpace,
    word: &WickWord,
    f: &FockVector,
    keep_degree: impl Fn(usize) -> usize,
) -> Result<FockVector> {
    let d = space.base();
    let mut v = space.admit(f)?;
    for (pos, letter) in word.0.iter().enumerate().rev() {
        let keep = keep_degree(pos);
        let created = |h: &Tensor| -> Result<FockVector> {
            if keep == 0 {
                return Ok(FockVector::zero(d, 0));
            }
            let mut src = v.clone();
            if src.top_degree() >= keep {
                src.truncate(keep - 1);
            }
            space.create_admitted(h, &src)
        };
        let mut next = match letter {
            Letter::Create(h) => created(h)?,
            Letter::Annihilate(h) => space.annihilate_admitted(h, &v)?,
            Letter::Field(h) => created(h)?.add(&space.annihilate_admitted(h, &v)?)?,
        };
        if next.top_degree() > keep {
            next.truncate(keep);
        }
        v = next;
    }
    Ok(v)
}

/// `word · f`.
pub fn apply_word(space: &FockSpace, word: &WickWord, f: &FockVector) -> Result<FockVector> {
    apply_pruned(space, word, f, |_| usize::MAX)
}

/// `τ(p) = ⟨pΩ, Ω⟩_F`, the Fock pairing taken antilinear in `pΩ`.
///
/// Components that cannot return to the vacuum with the letters still to
/// be applied are discarded, so only degrees up to `len / 2` are visited.
/// Words longer than twice the truncation degree are rejected.
pub fn vacuum_moment(space: &FockSpace, word: &WickWord) -> Result<Complex64> {
    if word.len() > 2 * space.truncation() {
        return Err(Error::TruncationOverflow {
            degree: word.len(),
            truncation: space.truncation(),
        });
    }
    let d = space.base();
    let omega = FockVector::vacuum(d);
    let out = apply_pruned(space, word, &omega, |remaining| remaining)?;
    space.inner(&out, &omega)
}

/// `|τ(p_1 p_2) − τ(p_2 p_1)|`.
pub fn commutator_moment(space: &FockSpace, p1: &WickWord, p2: &WickWord) -> Result<f64> {
    let a = vacuum_moment(space, &p1.concat(p2))?;
    let b = vacuum_moment(space, &p2.concat(p1))?;
    Ok((a - b).norm())
}

/// Largest traciality residual over the pairs, with the index achieving it.
pub fn traciality_residual(
    space: &FockSpace,
    pairs: &[(WickWord, WickWord)],
) -> Result<(f64, Option<usize>)> {
    let mut best = (0.0, None);
    for (i, (p1, p2)) in pairs.iter().enumerate() {
        let r = commutator_moment(space, p1, p2)?;
        if best.1.is_none() || r > best.0 {
            best = (r, Some(i));
        }
    }
    Ok(best)
}

/// Random words of field operators `B(φ)` with real-valued `φ`, lengths in
/// `1..=max_len`.
pub fn random_field_word(rng: &mut SuiteRng, d: usize, max_len: usize) -> WickWord {
    let len = rng.gen_range(1..=max_len.max(1));
    let letters = (0..len)
        .map(|_| Letter::Field(random_real_tensor(rng, d, 1)))
        .collect();
    WickWord(letters)
}
