use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qfock_cli::{run, ConfigError, RunConfig};
use qfock_core::{KernelSpec, QKernel};

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(
    name = "qfock",
    version,
    about = "Verify Q-deformed Fock space identities on finite site sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites described by a JSON config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run only these suites (repeatable); overrides the config list.
        #[arg(long = "suite", value_name = "NAME")]
        suites: Vec<String>,
        /// Include per-suite wall time in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Write a kernel JSON file for a named kernel family.
    Kernel {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Parameter as `RE,IM`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        q: Complex64,
        #[arg(long)]
        d: usize,
        /// Write here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    Constant,
    AnyonFermion,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    let parse = |p: &str| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}"));
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), ConfigError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_command(
    config: &Path,
    seed: Option<u64>,
    out: Option<&Path>,
    suites: &[String],
    timings: bool,
) -> Result<bool, ConfigError> {
    let mut cfg = RunConfig::load(config)?.with_suites(suites)?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let report = run(&cfg, timings);
    for s in &report.suites {
        let time = s
            .wall_time_s
            .map(|t| format!(" [{t:.3}s]"))
            .unwrap_or_default();
        eprintln!(
            "{:<4} {:<16} max residual {:.3e} (tolerance {:.0e}){time}",
            if s.status == qfock_cli::Status::Pass {
                "PASS"
            } else {
                "FAIL"
            },
            s.name,
            s.max_residual,
            s.tolerance
        );
    }
    write_output(out, &report.to_json())?;
    Ok(report.passed())
}

fn kernel_command(
    kind: Kind,
    q: Complex64,
    d: usize,
    out: Option<&Path>,
) -> Result<(), ConfigError> {
    let kernel = match kind {
        Kind::Constant => {
            if q.im != 0.0 {
                return Err(ConfigError::Invalid(format!(
                    "constant kernel needs a real q, got {q}"
                )));
            }
            QKernel::constant(q.re, d)?
        }
        Kind::AnyonFermion => QKernel::anyon_fermion(q, d)?,
    };
    let spec = KernelSpec::from(&kernel);
    let mut text = serde_json::to_string_pretty(&spec).expect("kernel is serializable");
    text.push('\n');
    write_output(out, &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            seed,
            out,
            suites,
            timings,
        } => run_command(&config, seed, out.as_deref(), &suites, timings),
        Command::Kernel { kind, q, d, out } => {
            kernel_command(kind, q, d, out.as_deref()).map(|()| true)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
