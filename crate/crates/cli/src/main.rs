//! Command-line driver: assembles a suite configuration from flags, runs
//! the requested verification suites, and emits a machine-readable report.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
//! configuration error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use cliffcheck::report::{ReportFormat, SuiteConfig};
use cliffcheck::suites::{run_suite, SuiteName};
use cliffcheck::Convention;

/// Environment variable naming the default output directory for reports.
const OUT_DIR_ENV: &str = "CLIFFCHECK_OUT_DIR";

#[derive(Parser, Debug)]
#[command(
    name = "cliffcheck",
    about = "Verification suites for Clifford-analysis function theory: \
             algebra identities, operator factorizations, the mass-term \
             intertwining transform, and the quadrature-checked integral \
             theorems",
    after_help = "Exit codes: 0 all checks passed, 1 check failure, 2 usage error.\n\
                  When --out is absent and CLIFFCHECK_OUT_DIR is set, the report is\n\
                  written to <dir>/report-<suite>.<ext>; otherwise it goes to stdout."
)]
struct Cli {
    /// Suite to run: algebra | operators | transform | cauchy | meanvalue |
    /// bergman | taylor | differentiability | all
    #[arg(long, default_value = "all")]
    suite: String,

    /// Number of anticommuting generators (1..=6)
    #[arg(long, default_value_t = 2)]
    n: u8,

    /// Mass term: a real, or comma-separated blade coefficients in bitmask
    /// order (e.g. "0,0.3" for 0.3 e1)
    #[arg(long, default_value = "0.5")]
    lambda: String,

    /// Sign convention: ledger | printed
    #[arg(long, default_value = "ledger")]
    convention: String,

    /// Central-difference step size
    #[arg(long, default_value_t = 1e-3)]
    h: f64,

    /// Quadrature refinement sweep as an inclusive range "lo..hi"
    #[arg(long = "refine", default_value = "2..4")]
    refine: String,

    /// Per-check tolerance override, repeatable: name=value
    #[arg(long = "tol-override", value_name = "NAME=VALUE")]
    tol_override: Vec<String>,

    /// Seed for every randomized field and sample draw
    #[arg(long, default_value_t = 20260808)]
    seed: u64,

    /// Report output path ("-" for stdout)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Report format: structured | tabular
    #[arg(long, default_value = "structured")]
    format: String,
}

fn parse_refine(text: &str) -> Result<Vec<u32>, String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("--refine expects lo..hi, got '{text}'"))?;
    let lo: u32 = lo.trim().parse().map_err(|e| format!("--refine lo: {e}"))?;
    let hi: u32 = hi.trim().parse().map_err(|e| format!("--refine hi: {e}"))?;
    if lo == 0 || hi < lo {
        return Err(format!("--refine needs 1 <= lo <= hi, got {lo}..{hi}"));
    }
    Ok((lo..=hi).collect())
}

fn parse_overrides(items: &[String]) -> Result<BTreeMap<String, f64>, String> {
    let mut map = BTreeMap::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("--tol-override expects name=value, got '{item}'"))?;
        let value: f64 = value
            .parse()
            .map_err(|e| format!("--tol-override {name}: {e}"))?;
        map.insert(name.to_string(), value);
    }
    Ok(map)
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();

    let suite: SuiteName = cli.suite.parse().map_err(|e| format!("{e}"))?;
    let convention: Convention = cli.convention.parse().map_err(|e| format!("{e}"))?;
    let format: ReportFormat = cli.format.parse().map_err(|e| format!("{e}"))?;
    let cfg = SuiteConfig {
        n: cli.n,
        lambda: cli.lambda.clone(),
        convention,
        h: cli.h,
        refinements: parse_refine(&cli.refine)?,
        tolerance_overrides: parse_overrides(&cli.tol_override)?,
        seed: cli.seed,
    };
    cfg.validate().map_err(|e| format!("{e}"))?;

    let started = Instant::now();
    let report = run_suite(suite, &cfg).map_err(|e| format!("{e}"))?;
    let elapsed = started.elapsed();

    for s in &report.suites {
        let ok = s.checks.iter().filter(|c| c.passed).count();
        eprintln!(
            "suite {:<18} {:>3}/{:<3} checks passed{}",
            s.name,
            ok,
            s.checks.len(),
            if s.passed { "" } else { "  <- FAILURES" }
        );
        for check in s.checks.iter().filter(|c| !c.passed) {
            eprintln!(
                "    FAIL {} residual={:e} tolerance={:e}",
                check.name, check.residual, check.tolerance
            );
        }
        for note in &s.diagnostics {
            eprintln!("    note: {note}");
        }
    }
    eprintln!(
        "{} checks in {:.1?}; overall: {}",
        report.check_count(),
        elapsed,
        if report.passed { "PASS" } else { "FAIL" }
    );
    if elapsed.as_secs() > 600 {
        eprintln!("warning: run exceeded the ten-minute budget");
    }

    let extension = match format {
        ReportFormat::Structured => "json",
        ReportFormat::Tabular => "tsv",
    };
    let out_path = cli.out.or_else(|| {
        std::env::var_os(OUT_DIR_ENV)
            .map(|dir| PathBuf::from(dir).join(format!("report-{}.{extension}", suite.as_str())))
    });
    match out_path {
        Some(path) if path.as_os_str() != "-" => {
            report.emit(&path, format).map_err(|e| format!("{e}"))?;
            eprintln!("report written to {}", path.display());
        }
        _ => {
            let body = match format {
                ReportFormat::Structured => report.to_structured(),
                ReportFormat::Tabular => report.to_tabular(),
            };
            print!("{body}");
        }
    }

    Ok(report.passed)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
