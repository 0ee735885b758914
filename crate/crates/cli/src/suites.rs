//! Suite implementations. Each suite runs against the configured kernel at
//! degrees up to `n_max` and never builds an operator above that degree.

use qfock_core::checks::{
    associativity_residual, braid_residual, kernel_theorem_residual, pn_min_eigenvalue,
    projection_laws, psi_pi_welldef_residual, recursion_residual, tensor_factor_residual, Worst,
};
use qfock_core::fock::{
    annihilation_power_norm, best_unimodular_exchange_residual, inversion_weight_sum,
    operator_norm_check_fermion_type, permanent_sum_identity, projected_power_norm, q_factorial,
    random_field_word, traciality_residual, verify_creation_exchange, verify_qcr, FockSpace,
    FockVector, Letter, WickWord,
};
use qfock_core::qsym::quasisym_check;
use qfock_core::random::{random_quasisymmetric, random_tensor, seeded, SuiteRng};
use qfock_core::{ExchangeKernel, Result, Tensor};

use crate::config::{RunConfig, SuiteName, SuiteRequest};

/// Number of random samples per degree where a suite draws inputs.
const SAMPLES: usize = 5;
/// Random word pairs tried by the traciality suite.
const TRACIALITY_PAIRS: usize = 50;
/// Residual that counts as a genuine violation in negative controls.
const VIOLATION: f64 = 1e-6;

/// Result of one suite before timing is attached.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub max_residual: f64,
    pub tolerance: f64,
    pub witness: Option<String>,
    pub notes: Vec<String>,
}

impl Outcome {
    fn threshold(worst: Worst, tolerance: f64, notes: Vec<String>) -> Outcome {
        Outcome {
            passed: worst.within(tolerance),
            max_residual: worst.residual,
            tolerance,
            witness: worst.witness,
            notes,
        }
    }
}

/// Seed for one suite, derived from the run seed and the registry position
/// so that adding or reordering suites leaves the others unchanged.
pub fn suite_rng(seed: u64, name: SuiteName) -> SuiteRng {
    seeded(seed ^ ((name.index() as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn degrees(lo: usize, hi: usize) -> String {
    if lo > hi {
        "no admissible degrees".into()
    } else {
        format!("degrees {lo}..={hi}")
    }
}

fn fmt_vec(h: &Tensor) -> String {
    let parts: Vec<String> = h
        .data()
        .iter()
        .map(|z| {
            if z.im == 0.0 {
                format!("{:.6}", z.re)
            } else {
                format!("{:.6}{:+.6}i", z.re, z.im)
            }
        })
        .collect();
    format!("[{}]", parts.join(", "))
}

fn fmt_word(w: &WickWord) -> String {
    let letters: Vec<String> = w
        .letters()
        .iter()
        .map(|l| match l {
            Letter::Create(h) => format!("a+{}", fmt_vec(h)),
            Letter::Annihilate(h) => format!("a-{}", fmt_vec(h)),
            Letter::Field(h) => format!("B{}", fmt_vec(h)),
        })
        .collect();
    letters.join(" ")
}

pub fn run_suite(config: &RunConfig, req: &SuiteRequest) -> Result<Outcome> {
    let mut rng = suite_rng(config.seed, req.name);
    let rng = &mut rng;
    match req.name {
        SuiteName::Braid => braid(config),
        SuiteName::PsiPiWelldef => psi_pi_welldef(config),
        SuiteName::PnPsd => pn_psd(config),
        SuiteName::KernelTheorem => kernel_theorem(config),
        SuiteName::ProjectionLaws => projection(config),
        SuiteName::TensorFactor => tensor_factor(config),
        SuiteName::Associativity => associativity(config, rng),
        SuiteName::RecursionRn => recursion(config),
        SuiteName::Qcr => qcr(config),
        SuiteName::Exchange => exchange(config),
        SuiteName::Adjointness => adjointness(config, rng),
        SuiteName::Exclusion => exclusion(config, req.m.expect("resolved at load"), rng),
        SuiteName::QFactorialSum => q_factorial_sum(config),
        SuiteName::Traciality => traciality(config, rng),
        SuiteName::NormBound => norm_bound(config, rng),
        SuiteName::QuasisymRange => quasisym_range(config, rng),
    }
}

fn space(config: &RunConfig) -> Result<FockSpace> {
    FockSpace::with_limits(config.kernel.clone(), config.n_max, config.limits)
}

fn braid(c: &RunConfig) -> Result<Outcome> {
    let mut worst = Worst::default();
    for n in 2..=c.n_max {
        worst.merge(braid_residual(&c.kernel, n, &c.limits)?);
    }
    Ok(Outcome::threshold(
        worst,
        c.tolerances.identity,
        vec![degrees(2, c.n_max)],
    ))
}

/// Enumerating every reduced word is only feasible for small degrees.
const WELLDEF_MAX_DEGREE: usize = 4;

fn psi_pi_welldef(c: &RunConfig) -> Result<Outcome> {
    let top = c.n_max.min(WELLDEF_MAX_DEGREE);
    let mut worst = Worst::default();
    for n in 1..=top {
        worst.merge(psi_pi_welldef_residual(&c.kernel, n, &c.limits)?);
    }
    Ok(Outcome::threshold(
        worst,
        c.tolerances.identity,
        vec![degrees(1, top)],
    ))
}

fn pn_psd(c: &RunConfig) -> Result<Outcome> {
    let mut lowest = f64::INFINITY;
    let mut at = 0;
    for n in 1..=c.n_max {
        let ev = pn_min_eigenvalue(&c.kernel, n, &c.limits)?;
        if ev < lowest {
            lowest = ev;
            at = n;
        }
    }
    let violation = (-lowest).max(0.0);
    Ok(Outcome {
        passed: violation <= c.tolerances.projector,
        max_residual: violation,
        tolerance: c.tolerances.projector,
        witness: Some(format!("n={at}: min eigenvalue {lowest:e}")),
        notes: vec![
            degrees(1, c.n_max),
            "residual is the negative part of min eig(P_n)".into(),
        ],
    })
}

fn kernel_theorem(c: &RunConfig) -> Result<Outcome> {
    let zero = c.tolerances.spectral_zero;
    let mut worst = Worst::default();
    for n in 1..=c.n_max {
        worst.merge(kernel_theorem_residual(&c.kernel, n, zero, &c.limits)?);
    }
    Ok(Outcome::threshold(worst, zero, vec![degrees(1, c.n_max)]))
}

fn projection(c: &RunConfig) -> Result<Outcome> {
    let zero = c.tolerances.spectral_zero;
    let (mut algebraic, mut spectral) = (Worst::default(), Worst::default());
    for n in 1..=c.n_max {
        let laws = projection_laws(&c.kernel, n, zero, &c.limits)?;
        algebraic.merge(laws.algebraic);
        spectral.merge(laws.spectral);
    }
    let spectral_ok = spectral.within(zero);
    let mut out = Outcome::threshold(
        algebraic,
        c.tolerances.projector,
        vec![
            degrees(1, c.n_max),
            format!(
                "spectral range projector residual {:e} (tolerance {zero:e}){}",
                spectral.residual,
                spectral
                    .witness
                    .as_deref()
                    .map(|w| format!(" at {w}"))
                    .unwrap_or_default()
            ),
        ],
    );
    out.passed &= spectral_ok;
    Ok(out)
}

fn tensor_factor(c: &RunConfig) -> Result<Outcome> {
    let mut worst = Worst::default();
    for n in 2..=c.n_max {
        worst.merge(tensor_factor_residual(&c.kernel, n, &c.limits)?);
    }
    Ok(Outcome::threshold(
        worst,
        c.tolerances.projector,
        vec![degrees(2, c.n_max)],
    ))
}

fn associativity(c: &RunConfig, rng: &mut SuiteRng) -> Result<Outcome> {
    let k = &c.kernel;
    let mut worst = Worst::default();
    for a in 1..=c.n_max {
        for b in 1..=c.n_max {
            for cc in 1..=c.n_max {
                if a + b + cc > c.n_max {
                    continue;
                }
                for i in 0..SAMPLES {
                    let f = random_quasisymmetric(rng, k, a, &c.limits)?;
                    let g = random_quasisymmetric(rng, k, b, &c.limits)?;
                    let h = random_quasisymmetric(rng, k, cc, &c.limits)?;
                    let r = associativity_residual(k, &f, &g, &h, &c.limits)?;
                    worst.track(r, || format!("degrees ({a}, {b}, {cc}), sample {i}"));
                }
            }
        }
    }
    let note = if c.n_max < 3 {
        "no degree triple fits under n_max".to_string()
    } else {
        format!("degree triples with sum <= {}", c.n_max)
    };
    Ok(Outcome::threshold(
        worst,
        c.tolerances.projector,
        vec![note],
    ))
}

fn recursion(c: &RunConfig) -> Result<Outcome> {
    let mut worst = Worst::default();
    for n in 0..c.n_max {
        worst.merge(recursion_residual(&c.kernel, n, &c.limits)?);
    }
    Ok(Outcome::threshold(
        worst,
        c.tolerances.identity,
        vec![format!("n = 0..={}", c.n_max - 1)],
    ))
}

fn qcr(c: &RunConfig) -> Result<Outcome> {
    let space = space(c)?;
    let d = space.base();
    let top = c.n_max - 1;
    let mut worst = Worst::default();
    for s in 0..d {
        for t in 0..d {
            let r = verify_qcr(&space, s, t, top)?;
            worst.track(r.residual, || {
                format!("(s,t)=({s},{t}), degree {}", r.degree)
            });
        }
    }
    Ok(Outcome::threshold(
        worst,
        c.tolerances.projector,
        vec![format!("source {}", degrees(0, top))],
    ))
}

fn exchange(c: &RunConfig) -> Result<Outcome> {
    let space = space(c)?;
    let d = space.base();
    let tol = c.tolerances.modulus_one;
    let mut notes = Vec::new();
    if c.n_max < 2 {
        notes.push("exchange relations need n_max >= 2".into());
        return Ok(Outcome::threshold(
            Worst::default(),
            c.tolerances.projector,
            notes,
        ));
    }
    let top = c.n_max - 2;
    notes.push(format!("source {}", degrees(0, top)));
    let mut worst = Worst::default();
    let mut pairs = 0;
    for s in 0..d {
        for t in 0..d {
            if space.kernel().theta(s, t, tol) {
                pairs += 1;
                let r = verify_creation_exchange(&space, s, t, top)?;
                worst.track(r.max(), || format!("(s,t)=({s},{t})"));
            }
        }
    }
    notes.push(format!("{pairs} pairs in Θ"));
    let mut out = Outcome::threshold(worst, c.tolerances.projector, notes);
    let control = (0..d)
        .flat_map(|s| (0..d).map(move |t| (s, t)))
        .find(|&(s, t)| s != t && !space.kernel().theta(s, t, tol));
    match control {
        Some((s, t)) => {
            let r = best_unimodular_exchange_residual(&space, s, t, top)?;
            out.passed &= r > VIOLATION;
            out.notes.push(format!(
                "negative control ({s},{t}), |Q| = {:.6}: best unimodular residual {r:e} (must exceed {VIOLATION:e})",
                space.kernel().entry(s, t).norm()
            ));
        }
        None => out
            .notes
            .push("no off-diagonal pair outside Θ; negative control skipped".into()),
    }
    Ok(out)
}

/// Quasisymmetric tensors sampled for the dual annihilator comparison.
const DUAL_SAMPLES: usize = 30;

fn adjointness(c: &RunConfig, rng: &mut SuiteRng) -> Result<Outcome> {
    let space = space(c)?;
    let (k, d) = (&c.kernel, space.base());
    let mut worst = Worst::default();
    for n in 0..c.n_max {
        for i in 0..SAMPLES {
            let f = FockVector::homogeneous(random_quasisymmetric(rng, k, n, &c.limits)?);
            let g = FockVector::homogeneous(random_quasisymmetric(rng, k, n + 1, &c.limits)?);
            let h = random_tensor(rng, d, 1);
            let lhs = space.inner(&space.create(&h, &f)?, &g)?;
            let rhs = space.inner(&f, &space.annihilate(&h, &g)?)?;
            worst.track((lhs - rhs).norm(), || format!("degree {n}, sample {i}"));
        }
    }
    let mut dual = Worst::default();
    for i in 0..DUAL_SAMPLES {
        let n = 1 + i % c.n_max;
        let f = FockVector::homogeneous(random_quasisymmetric(rng, k, n, &c.limits)?);
        let h = random_tensor(rng, d, 1);
        let a = space.annihilate(&h, &f)?.component(n - 1);
        let b = space.annihilate_direct(&h, &f)?.component(n - 1);
        dual.track(a.sub(&b)?.norm(), || format!("tensor {i}, degree {n}"));
    }
    let dual_ok = dual.within(c.tolerances.identity);
    let mut out = Outcome::threshold(
        worst,
        c.tolerances.projector,
        vec![
            format!("⟨a⁺(h)F, G⟩ = ⟨F, a⁻(h)G⟩ on {}", degrees(0, c.n_max - 1)),
            format!(
                "R_n route vs direct sum for a⁻(h): max difference {:e} (tolerance {:e}) over {DUAL_SAMPLES} tensors",
                dual.residual, c.tolerances.identity
            ),
        ],
    );
    out.passed &= dual_ok;
    Ok(out)
}

/// Random vectors per exclusion run.
const EXCLUSION_SAMPLES: usize = 10;

fn exclusion(c: &RunConfig, m: usize, rng: &mut SuiteRng) -> Result<Outcome> {
    let k = &c.kernel;
    let d = k.dim();
    let fock = FockSpace::with_limits(k.clone(), m, c.limits)?;
    let mut worst = Worst::default();
    for _ in 0..EXCLUSION_SAMPLES {
        let h = random_tensor(rng, d, 1);
        let r = projected_power_norm(k, &h, m, &c.limits)?;
        worst.track(r, || format!("‖ℙ_{m} h^⊗{m}‖, h = {}", fmt_vec(&h)));
        let g = FockVector::homogeneous(random_quasisymmetric(rng, k, m, &c.limits)?);
        let r = annihilation_power_norm(&fock, &h, m, &g)?;
        worst.track(r, || format!("‖a⁻(h)^{m} G‖, h = {}", fmt_vec(&h)));
    }
    let q = k
        .anyon_parameter(c.tolerances.modulus_one)
        .expect("checked at load");
    Ok(Outcome::threshold(
        worst,
        c.tolerances.projector,
        vec![format!("m = {m}, q = {q}, {EXCLUSION_SAMPLES} random h")],
    ))
}

/// Largest `n` for which `S_n` is summed.
const Q_FACTORIAL_MAX: usize = 7;

fn q_factorial_sum(c: &RunConfig) -> Result<Outcome> {
    let k = &c.kernel;
    let mut worst = Worst::default();
    let mut notes = Vec::new();
    if let Some(q) = k.constant_value() {
        let top = c.n_max.min(Q_FACTORIAL_MAX);
        for n in 0..=top {
            let (lhs, rhs) = permanent_sum_identity(q, n)?;
            worst.track((lhs - rhs).norm(), || format!("n={n}: {lhs} vs {rhs}"));
        }
        notes.push(format!("Σ_π q^|π| = [n]_q!, q = {q}, n = 0..={top}"));
    } else {
        let q = k
            .anyon_parameter(c.tolerances.modulus_one)
            .expect("checked at load");
        let top = c.n_max.min(k.dim()).min(Q_FACTORIAL_MAX);
        for m in 1..=top {
            let t: Vec<usize> = (0..m).collect();
            let lhs = inversion_weight_sum(k, &t)?;
            let rhs = q_factorial(q.conj(), m);
            worst.track((lhs - rhs).norm(), || format!("m={m}: {lhs} vs {rhs}"));
        }
        notes.push(format!(
            "Σ_π Q_π(0, 1, …, m-1) = [m]_q̄! with Q(s,t) = q for s > t, q = {q}, m = 1..={top}"
        ));
    }
    Ok(Outcome::threshold(worst, c.tolerances.identity, notes))
}

/// Longest word drawn by the traciality search.
const TRACIALITY_WORD_LEN: usize = 4;

fn traciality(c: &RunConfig, rng: &mut SuiteRng) -> Result<Outcome> {
    let space = space(c)?;
    let d = space.base();
    let len = c.n_max.min(TRACIALITY_WORD_LEN);
    let pairs: Vec<(WickWord, WickWord)> = (0..TRACIALITY_PAIRS)
        .map(|_| {
            (
                random_field_word(rng, d, len),
                random_field_word(rng, d, len),
            )
        })
        .collect();
    let (r, at) = traciality_residual(&space, &pairs)?;
    let witness = at.map(|i| {
        format!(
            "pair {i}: p1 = {}; p2 = {}",
            fmt_word(&pairs[i].0),
            fmt_word(&pairs[i].1)
        )
    });
    let search = format!(
        "{TRACIALITY_PAIRS} pairs of B(φ) words, real φ, lengths <= {len}, suite seed derived from run seed {}",
        c.seed
    );
    if c.kernel.is_real() {
        Ok(Outcome {
            passed: r <= c.tolerances.projector,
            max_residual: r,
            tolerance: c.tolerances.projector,
            witness,
            notes: vec![search, "real kernel: τ(p₁p₂) = τ(p₂p₁) expected".into()],
        })
    } else {
        let found = r > VIOLATION;
        Ok(Outcome {
            passed: found,
            max_residual: r,
            tolerance: c.tolerances.projector,
            witness,
            notes: vec![
                search,
                format!(
                    "complex kernel: counterexample with residual > {VIOLATION:e} expected; {}",
                    if found {
                        "found (non-tracial)"
                    } else {
                        "not found"
                    }
                ),
            ],
        })
    }
}

fn norm_bound(c: &RunConfig, rng: &mut SuiteRng) -> Result<Outcome> {
    let space = space(c)?;
    let d = space.base();
    let top = c.n_max - 1;
    let mut vectors: Vec<Tensor> = (0..d)
        .map(|t| Tensor::basis(d, &[t]))
        .collect::<Result<_>>()?;
    vectors.extend((0..SAMPLES).map(|_| random_tensor(rng, d, 1)));
    let mut worst = Worst::default();
    let mut ratio: f64 = 0.0;
    for h in &vectors {
        let (norm, l1) = operator_norm_check_fermion_type(&space, h, top)?;
        worst.track((norm - l1).max(0.0), || {
            format!("h = {}: ‖a⁺(h)‖ = {norm:.12}, ‖h‖₁ = {l1:.12}", fmt_vec(h))
        });
        ratio = ratio.max(norm / l1);
    }
    Ok(Outcome::threshold(
        worst,
        c.tolerances.projector,
        vec![
            format!("source {}", degrees(0, top)),
            format!("largest ‖a⁺(h)‖ / ‖h‖₁ = {ratio:.12}"),
        ],
    ))
}

fn quasisym_range(c: &RunConfig, rng: &mut SuiteRng) -> Result<Outcome> {
    let mut worst = Worst::default();
    for n in 2..=c.n_max {
        for i in 0..SAMPLES {
            let f = random_quasisymmetric(rng, &c.kernel, n, &c.limits)?;
            let check = quasisym_check(
                &c.kernel,
                &f,
                c.tolerances.projector,
                c.tolerances.modulus_one,
            )?;
            worst.track(check.max_residual, || match &check.witness {
                Some((k, t)) => format!("degree {n}, sample {i}, k={k}, t={t:?}"),
                None => format!("degree {n}, sample {i}"),
            });
        }
    }
    Ok(Outcome::threshold(
        worst,
        c.tolerances.projector,
        vec![degrees(2, c.n_max)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RawConfig;
    use std::path::Path;

    fn config(kernel: &str, n_max: usize, suites: &str) -> RunConfig {
        let json =
            format!(r#"{{"kernel": {kernel}, "n_max": {n_max}, "suites": {suites}, "seed": 5}}"#);
        let raw: RawConfig = serde_json::from_str(&json).unwrap();
        RunConfig::from_raw(raw, Path::new(".")).unwrap()
    }

    fn run_all(c: &RunConfig) -> Vec<(SuiteName, Outcome)> {
        c.suites
            .iter()
            .map(|r| (r.name, run_suite(c, r).unwrap()))
            .collect()
    }

    #[test]
    fn every_suite_passes_on_a_fermionic_anyon_kernel() {
        let names: Vec<String> = SuiteName::ALL.iter().map(|n| format!("\"{n}\"")).collect();
        let c = config(
            r#"{"kind": "anyon_fermion", "q": [-1, 0], "d": 2}"#,
            3,
            &format!("[{}]", names.join(", ")),
        );
        for (name, out) in run_all(&c) {
            assert!(out.passed, "{name}: {out:?}");
        }
    }

    #[test]
    fn generic_kernel_suites_pass() {
        let c = config(
            r#"{"d": 2, "entries": [[[0.3, 0], [0, 1]], [[0, -1], [-1, 0]]]}"#,
            3,
            r#"["braid", "psi_pi_welldef", "pn_psd", "kernel_theorem", "projection_laws", "tensor_factor",
                "associativity", "recursion_rn", "qcr", "exchange", "adjointness", "traciality", "quasisym_range"]"#,
        );
        for (name, out) in run_all(&c) {
            assert!(out.passed, "{name}: {out:?}");
        }
    }

    #[test]
    fn suite_seeds_differ() {
        let a = random_tensor(&mut suite_rng(1, SuiteName::Braid), 2, 1);
        let b = random_tensor(&mut suite_rng(1, SuiteName::Traciality), 2, 1);
        assert_ne!(a, b);
    }

    #[test]
    fn q_factorial_for_constant_and_anyon() {
        for kernel in [
            r#"{"kind": "constant", "q": [-0.9, 0], "d": 1}"#,
            r#"{"kind": "anyon_fermion", "q": [0, 1], "d": 4}"#,
        ] {
            let c = config(kernel, 4, r#"["q_factorial_sum"]"#);
            let out = run_suite(&c, &c.suites[0]).unwrap();
            assert!(out.passed, "{kernel}: {out:?}");
        }
    }
}
