//! Machine-readable verification reports.
//!
//! The structured format is a stable JSON tree (config, then suites, then
//! per-check records); the tabular format is one TSV row per check for
//! convergence plotting. Reports contain no timestamps and every collection
//! is ordered, so equal configuration and seed produce byte-identical bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::convention::Convention;
use crate::error::{Error, Result};

/// Everything a suite needs to reproduce a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n: u8,
    /// Mass-term descriptor: "0", a real, or comma-separated blade
    /// coefficients.
    pub lambda: String,
    pub convention: Convention,
    pub h: f64,
    /// Strictly increasing refinement levels for the quadrature sweeps.
    pub refinements: Vec<u32>,
    /// Per-check tolerance overrides by check name.
    pub tolerance_overrides: BTreeMap<String, f64>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 2,
            lambda: "0.5".to_string(),
            convention: Convention::Ledger,
            h: 1e-3,
            refinements: vec![2, 3, 4],
            tolerance_overrides: BTreeMap::new(),
            seed: 20260808,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=crate::MAX_GENERATORS).contains(&self.n) {
            return Err(Error::InvalidConfig(format!(
                "n = {} outside 1..={}",
                self.n,
                crate::MAX_GENERATORS
            )));
        }
        if self.h <= 0.0 {
            return Err(Error::InvalidConfig("h must be positive".to_string()));
        }
        if self.refinements.is_empty() {
            return Err(Error::InvalidConfig(
                "at least one refinement level is required".to_string(),
            ));
        }
        if self.refinements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "refinement levels must be strictly increasing".to_string(),
            ));
        }
        if self.refinements[0] == 0 {
            return Err(Error::InvalidConfig("refinement levels start at 1".to_string()));
        }
        if self.tolerance_overrides.values().any(|t| *t <= 0.0) {
            return Err(Error::InvalidConfig("tolerances must be positive".to_string()));
        }
        crate::transform::MassTerm::parse(&self.lambda, self.n)?;
        Ok(())
    }

    /// Check tolerance: the override when present, else the built-in value.
    pub fn tol(&self, check: &str, default: f64) -> f64 {
        *self.tolerance_overrides.get(check).unwrap_or(&default)
    }
}

/// One named check: parameters, residual against tolerance, and an observed
/// convergence order when one was measured.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub residual: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<f64>,
    pub passed: bool,
}

impl CheckRecord {
    pub fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        CheckRecord {
            name: name.to_string(),
            params: BTreeMap::new(),
            residual,
            tolerance,
            order: None,
            passed: residual <= tolerance,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_order(mut self, order: Option<f64>) -> Self {
        self.order = order;
        self
    }

    /// Override the pass flag for checks that are not plain
    /// residual-below-tolerance comparisons.
    pub fn with_passed(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckRecord>,
    /// Non-fatal observations (calibration drift, symmetry findings).
    pub diagnostics: Vec<String>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checks: Vec::new(),
            diagnostics: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn diagnose(&mut self, message: String) {
        self.diagnostics.push(message);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: SuiteConfig,
    /// Echo of the active sign convention.
    pub convention_detail: String,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(config: SuiteConfig) -> Self {
        let convention_detail = config.convention.describe();
        VerificationReport {
            config,
            convention_detail,
            suites: Vec::new(),
            passed: true,
        }
    }

    pub fn push(&mut self, suite: SuiteReport) {
        self.passed &= suite.passed;
        self.suites.push(suite);
    }

    pub fn check_count(&self) -> usize {
        self.suites.iter().map(|s| s.checks.len()).sum()
    }

    pub fn to_structured(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }

    pub fn parse_structured(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "verification report",
            detail: e.to_string(),
        })
    }

    pub fn to_tabular(&self) -> String {
        let mut out = String::from("suite\tcheck\tparams\tresidual\ttolerance\torder\tpassed\n");
        for suite in &self.suites {
            for check in &suite.checks {
                let params = check
                    .params
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";");
                let order = check
                    .order
                    .map(|o| format!("{o}"))
                    .unwrap_or_else(|| "-".to_string());
                out.push_str(&format!(
                    "{}\t{}\t{}\t{:e}\t{:e}\t{}\t{}\n",
                    suite.name, check.name, params, check.residual, check.tolerance, order,
                    check.passed
                ));
            }
        }
        out
    }

    pub fn emit(&self, path: &Path, format: ReportFormat) -> Result<()> {
        let body = match format {
            ReportFormat::Structured => self.to_structured(),
            ReportFormat::Tabular => self.to_tabular(),
        };
        fs::write(path, body).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Structured,
    Tabular,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structured" => Ok(ReportFormat::Structured),
            "tabular" => Ok(ReportFormat::Tabular),
            other => Err(Error::Parse {
                what: "report format",
                detail: format!("expected 'structured' or 'tabular', got '{other}'"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_serializes_and_parses() {
        let report = VerificationReport::new(SuiteConfig::default());
        let text = report.to_structured();
        let back = VerificationReport::parse_structured(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.check_count(), 0);
        assert!(back.passed);
    }

    #[test]
    fn round_trip_preserves_value() {
        let mut report = VerificationReport::new(SuiteConfig::default());
        let mut suite = SuiteReport::new("algebra");
        suite.push(
            CheckRecord::new("anticommutation", 0.0, 1e-12)
                .with_param("n", 3)
                .with_order(Some(2.0)),
        );
        suite.push(CheckRecord::new("associativity", 2e-13, 1e-12));
        suite.diagnose("example diagnostic".to_string());
        report.push(suite);
        let back = VerificationReport::parse_structured(&report.to_structured()).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn tabular_has_one_row_per_check() {
        let mut report = VerificationReport::new(SuiteConfig::default());
        let mut suite = SuiteReport::new("cauchy");
        for refinement in 2..=4 {
            for field in ["constant", "V_(1,1)"] {
                suite.push(
                    CheckRecord::new("cauchy_theorem", 1e-9, 1e-6)
                        .with_param("refinement", refinement)
                        .with_param("field", field),
                );
            }
        }
        report.push(suite);
        let table = report.to_tabular();
        assert_eq!(table.lines().count(), 1 + 6);
    }

    #[test]
    fn config_validation() {
        let mut cfg = SuiteConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.refinements = vec![3, 2];
        assert!(cfg.validate().is_err());
        cfg.refinements = vec![2, 3];
        cfg.lambda = "not-a-number".to_string();
        assert!(cfg.validate().is_err());
    }
}
