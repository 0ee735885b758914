//! The JSON report.

use serde::Serialize;

use crate::config::Tolerances;
use qfock_core::KernelSpec;

/// Report format version.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub status: Status,
    /// Largest residual observed; for threshold suites, the quantity
    /// compared against `tolerance`.
    pub max_residual: f64,
    pub tolerance: f64,
    /// Where the largest residual occurred.
    pub witness: Option<String>,
    /// Degrees covered and suite-specific findings.
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub status: Status,
    pub seed: u64,
    pub n_max: usize,
    pub kernel: KernelSpec,
    pub tolerances: Tolerances,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }
}
