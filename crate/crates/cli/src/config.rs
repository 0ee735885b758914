//! Run configuration: JSON loading and validation.

use std::fmt;
use std::path::{Path, PathBuf};

use qfock_core::fock::{check_exclusion_hypotheses, root_order};
use qfock_core::permgroup::MAX_ENUMERATION_DEGREE;
use qfock_core::qsym::{Limits, DEFAULT_SIZE_CAP};
use qfock_core::{KernelSpec, QKernel};
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

/// Registered suites, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    Braid,
    PsiPiWelldef,
    PnPsd,
    KernelTheorem,
    ProjectionLaws,
    TensorFactor,
    Associativity,
    RecursionRn,
    Qcr,
    Exchange,
    Adjointness,
    Exclusion,
    QFactorialSum,
    Traciality,
    NormBound,
    QuasisymRange,
}

impl SuiteName {
    pub const ALL: [SuiteName; 16] = [
        SuiteName::Braid,
        SuiteName::PsiPiWelldef,
        SuiteName::PnPsd,
        SuiteName::KernelTheorem,
        SuiteName::ProjectionLaws,
        SuiteName::TensorFactor,
        SuiteName::Associativity,
        SuiteName::RecursionRn,
        SuiteName::Qcr,
        SuiteName::Exchange,
        SuiteName::Adjointness,
        SuiteName::Exclusion,
        SuiteName::QFactorialSum,
        SuiteName::Traciality,
        SuiteName::NormBound,
        SuiteName::QuasisymRange,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Braid => "braid",
            SuiteName::PsiPiWelldef => "psi_pi_welldef",
            SuiteName::PnPsd => "pn_psd",
            SuiteName::KernelTheorem => "kernel_theorem",
            SuiteName::ProjectionLaws => "projection_laws",
            SuiteName::TensorFactor => "tensor_factor",
            SuiteName::Associativity => "associativity",
            SuiteName::RecursionRn => "recursion_rn",
            SuiteName::Qcr => "qcr",
            SuiteName::Exchange => "exchange",
            SuiteName::Adjointness => "adjointness",
            SuiteName::Exclusion => "exclusion",
            SuiteName::QFactorialSum => "q_factorial_sum",
            SuiteName::Traciality => "traciality",
            SuiteName::NormBound => "norm_bound",
            SuiteName::QuasisymRange => "quasisym_range",
        }
    }

    /// Accepts the registered names plus `positivity` for `pn_psd`.
    pub fn parse(s: &str) -> Result<SuiteName, ConfigError> {
        if s == "positivity" {
            return Ok(SuiteName::PnPsd);
        }
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = SuiteName::ALL.iter().map(|n| n.as_str()).collect();
                ConfigError::Invalid(format!(
                    "unknown suite `{s}`; known suites: {}",
                    known.join(", ")
                ))
            })
    }

    /// Position in the registry; used to derive per-suite seeds.
    pub fn index(self) -> usize {
        SuiteName::ALL
            .iter()
            .position(|&n| n == self)
            .expect("registered")
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A suite request: a bare name, or an object carrying suite parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SuiteEntry {
    Name(String),
    Detailed {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
    },
}

/// Kernel given inline or as a path to a kernel JSON file, resolved
/// relative to the config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KernelSource {
    Inline(KernelSpec),
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// `|Q| = 1` detection.
    pub modulus_one: f64,
    /// Projector laws and operator relations.
    pub projector: f64,
    /// Eigenvalue zero threshold and spectral projector comparison.
    pub spectral_zero: f64,
    /// Exact algebraic identities (braid, recursion, dual annihilators).
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            modulus_one: 1e-12,
            projector: 1e-10,
            spectral_zero: 1e-8,
            identity: 1e-12,
        }
    }
}

/// The raw JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub kernel: KernelSource,
    #[serde(default)]
    pub d: Option<usize>,
    pub n_max: usize,
    pub suites: Vec<SuiteEntry>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_size_cap")]
    pub size_cap: usize,
}

fn default_size_cap() -> usize {
    DEFAULT_SIZE_CAP
}

/// A suite with its resolved parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteRequest {
    pub name: SuiteName,
    /// Exclusion order; set only for the exclusion suite.
    pub m: Option<usize>,
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub kernel: QKernel,
    pub n_max: usize,
    pub suites: Vec<SuiteRequest>,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub limits: Limits,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| ConfigError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl RunConfig {
    /// Loads and validates a config file.
    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let raw: RawConfig = read_json(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        RunConfig::from_raw(raw, base)
    }

    /// Validates a parsed document; kernel paths resolve against `base`.
    pub fn from_raw(raw: RawConfig, base: &Path) -> Result<RunConfig, ConfigError> {
        let spec = match raw.kernel {
            KernelSource::Inline(spec) => spec,
            KernelSource::File(p) => read_json(&base.join(p))?,
        };
        let kernel = spec.build()?;
        let d = kernel.rows().len();
        if let Some(expected) = raw.d {
            if expected != d {
                return Err(ConfigError::Invalid(format!(
                    "config d = {expected} but the kernel has d = {d}"
                )));
            }
        }
        let t = raw.tolerances;
        for (name, v) in [
            ("modulus_one", t.modulus_one),
            ("projector", t.projector),
            ("spectral_zero", t.spectral_zero),
            ("identity", t.identity),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(ConfigError::Invalid(format!(
                    "tolerance {name} must be positive and finite, got {v}"
                )));
            }
        }
        if raw.n_max == 0 || raw.n_max > MAX_ENUMERATION_DEGREE {
            return Err(ConfigError::Invalid(format!(
                "n_max must be in 1..={MAX_ENUMERATION_DEGREE}, got {}",
                raw.n_max
            )));
        }
        let limits = Limits {
            size_cap: raw.size_cap,
            modulus_one: t.modulus_one,
        };
        limits.check(d, raw.n_max)?;
        if raw.suites.is_empty() {
            return Err(ConfigError::Invalid("no suites requested".into()));
        }
        let mut suites = Vec::with_capacity(raw.suites.len());
        for entry in &raw.suites {
            let (name, m) = match entry {
                SuiteEntry::Name(n) => (SuiteName::parse(n)?, None),
                SuiteEntry::Detailed { name, m } => (SuiteName::parse(name)?, *m),
            };
            if m.is_some() && name != SuiteName::Exclusion {
                return Err(ConfigError::Invalid(format!(
                    "parameter m only applies to the exclusion suite, not `{name}`"
                )));
            }
            suites.push(SuiteRequest { name, m });
        }
        let mut config = RunConfig {
            kernel,
            n_max: raw.n_max,
            suites,
            tolerances: t,
            seed: raw.seed,
            limits,
        };
        config.resolve_suites()?;
        Ok(config)
    }

    /// Replaces the suite list, e.g. from `--suite` flags.
    pub fn with_suites(mut self, names: &[String]) -> Result<RunConfig, ConfigError> {
        if names.is_empty() {
            return Ok(self);
        }
        let mut suites = Vec::with_capacity(names.len());
        for n in names {
            let name = SuiteName::parse(n)?;
            let m = self
                .suites
                .iter()
                .find(|s| s.name == name)
                .and_then(|s| s.m);
            suites.push(SuiteRequest { name, m });
        }
        self.suites = suites;
        self.resolve_suites()?;
        Ok(self)
    }

    /// Checks suite preconditions against the kernel and fills in defaults.
    fn resolve_suites(&mut self) -> Result<(), ConfigError> {
        let tol = self.tolerances.modulus_one;
        let d = self.kernel.rows().len();
        for req in &mut self.suites {
            match req.name {
                SuiteName::Exclusion => {
                    let q = self.kernel.anyon_parameter(tol).ok_or_else(|| {
                        ConfigError::Invalid("exclusion suite needs an anyon fermion kernel".into())
                    })?;
                    let m = match req.m {
                        Some(m) => m,
                        None => root_order(q, MAX_ENUMERATION_DEGREE).ok_or_else(|| {
                            ConfigError::Invalid(format!(
                                "q = {q} is not a root of unity of order <= {MAX_ENUMERATION_DEGREE}"
                            ))
                        })?,
                    };
                    check_exclusion_hypotheses(q, m)?;
                    self.limits.check(d, m)?;
                    req.m = Some(m);
                }
                SuiteName::NormBound if !self.kernel.is_fermion_type(tol) => {
                    return Err(ConfigError::Invalid(
                        "norm_bound suite needs a fermion-type kernel (Q(t,t) = -1, |Q| = 1)"
                            .into(),
                    ));
                }
                SuiteName::QFactorialSum
                    if self.kernel.constant_value().is_none()
                        && self.kernel.anyon_parameter(tol).is_none() =>
                {
                    return Err(ConfigError::Invalid(
                        "q_factorial_sum suite needs a constant or anyon fermion kernel".into(),
                    ));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(json: &str) -> RawConfig {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for n in SuiteName::ALL {
            assert_eq!(SuiteName::parse(n.as_str()).unwrap(), n);
        }
        assert_eq!(SuiteName::parse("positivity").unwrap(), SuiteName::PnPsd);
        assert!(matches!(
            SuiteName::parse("nope"),
            Err(ConfigError::Invalid(_))
        ));
    }

    #[test]
    fn minimal_config() {
        let c = RunConfig::from_raw(
            raw(r#"{"kernel": {"kind": "constant", "q": [0, 0], "d": 2}, "n_max": 3, "suites": ["braid"]}"#),
            Path::new("."),
        )
        .unwrap();
        assert_eq!(c.n_max, 3);
        assert_eq!(c.seed, 0);
        assert_eq!(c.tolerances, Tolerances::default());
    }

    #[test]
    fn exclusion_order_is_derived() {
        let c = RunConfig::from_raw(
            raw(r#"{"kernel": {"kind": "anyon_fermion", "q": [0, 1], "d": 2}, "n_max": 2, "suites": ["exclusion"]}"#),
            Path::new("."),
        )
        .unwrap();
        assert_eq!(c.suites[0].m, Some(4));
    }

    #[test]
    fn rejects_bad_configs() {
        let cases = [
            r#"{"kernel": {"kind": "constant", "q": [0, 0], "d": 2}, "d": 3, "n_max": 3, "suites": ["braid"]}"#,
            r#"{"kernel": {"kind": "constant", "q": [0, 0], "d": 4}, "n_max": 7, "suites": ["braid"]}"#,
            r#"{"kernel": {"kind": "constant", "q": [0.5, 0], "d": 2}, "n_max": 3, "suites": ["exclusion"]}"#,
            r#"{"kernel": {"kind": "constant", "q": [0.5, 0], "d": 2}, "n_max": 3, "suites": ["norm_bound"]}"#,
            r#"{"kernel": {"kind": "constant", "q": [0.5, 0], "d": 2}, "n_max": 3, "suites": [{"name": "braid", "m": 2}]}"#,
            r#"{"kernel": {"kind": "anyon_fermion", "q": [0, 1], "d": 2}, "n_max": 3, "suites": [{"name": "exclusion", "m": 3}]}"#,
            r#"{"kernel": {"kind": "constant", "q": [0.5, 0], "d": 2}, "n_max": 0, "suites": ["braid"]}"#,
            r#"{"kernel": {"kind": "constant", "q": [0.5, 0], "d": 2}, "n_max": 2, "suites": []}"#,
        ];
        for json in cases {
            assert!(
                RunConfig::from_raw(raw(json), Path::new(".")).is_err(),
                "{json}"
            );
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let r: Result<RawConfig, _> = serde_json::from_str(
            r#"{"kernel": {"kind": "constant", "q": [0, 0], "d": 2}, "n_max": 3, "suites": [], "sede": 1}"#,
        );
        assert!(r.is_err());
    }
}
