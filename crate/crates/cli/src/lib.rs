//! Configuration-driven verification harness: load a kernel, run named
//! suites, emit a deterministic JSON report.

pub mod config;
pub mod error;
pub mod report;
pub mod suites;

use std::time::Instant;

pub use config::{RunConfig, SuiteName};
pub use error::ConfigError;
pub use report::{Report, Status, SuiteReport};

/// Runs every requested suite in order. Wall times are recorded only when
/// `timings` is set, so the default report is byte-identical across runs.
pub fn run(config: &RunConfig, timings: bool) -> Report {
    let mut reports = Vec::with_capacity(config.suites.len());
    for req in &config.suites {
        let started = Instant::now();
        let outcome = suites::run_suite(config, req);
        let elapsed = started.elapsed().as_secs_f64();
        let report = match outcome {
            Ok(o) => SuiteReport {
                name: req.name.to_string(),
                status: Status::from_bool(o.passed),
                max_residual: o.max_residual,
                tolerance: o.tolerance,
                witness: o.witness,
                notes: o.notes,
                wall_time_s: None,
            },
            Err(e) => SuiteReport {
                name: req.name.to_string(),
                status: Status::Fail,
                max_residual: f64::NAN,
                tolerance: f64::NAN,
                witness: None,
                notes: vec![format!("error: {e}")],
                wall_time_s: None,
            },
        };
        reports.push(SuiteReport {
            wall_time_s: timings.then_some(elapsed),
            ..report
        });
    }
    let passed = reports.iter().all(|r| r.status == Status::Pass);
    Report {
        schema: report::SCHEMA_VERSION,
        status: Status::from_bool(passed),
        seed: config.seed,
        n_max: config.n_max,
        kernel: (&config.kernel).into(),
        tolerances: config.tolerances,
        suites: reports,
    }
}
