//! Theorem-level verification procedures: each claimed commutativity,
//! non-commutativity, conjugation, refutation, and automaticity statement
//! becomes a deterministic finite check with a pass/fail report and
//! witnesses.

mod beta_auto;
mod cases;
mod refute;

pub use beta_auto::{check_beta_automatic, random_beta_instances};
pub use cases::{
    verify_cones, verify_de_conjugation, verify_family_conjugation, verify_gamma_compat,
};
pub use refute::refute_isomorphism_cases;

use crate::lambda::{SubCheck, Verdict};
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Duration;

pub type Result<T> = crate::groupexpr::Result<T>;

/// Report of one verification procedure.
///
/// The elapsed time is kept for the text report but excluded from the JSON
/// serialization so that identical inputs produce identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub subchecks: Vec<SubCheck>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn new(check: impl Into<String>) -> Self {
        VerifyReport {
            check: check.into(),
            params: BTreeMap::new(),
            verdict: Verdict::Pass,
            subchecks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, sub: SubCheck) {
        if !sub.verdict.passed() {
            self.verdict = Verdict::Fail;
        }
        self.subchecks.push(sub);
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

/// Configuration of the verification suite.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Largest coefficient level (the containers' bound).
    pub max_coeff: u64,
    /// Index window for family and refutation checks.
    pub window: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_coeff: 24, window: 12 }
    }
}

/// The named verification cases of the suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    De,
    Family,
    Gamma,
    Refute,
    BetaAuto,
    Cones,
    All,
}

impl std::str::FromStr for Case {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Case, String> {
        match s {
            "de" => Ok(Case::De),
            "family" => Ok(Case::Family),
            "gamma" => Ok(Case::Gamma),
            "refute" => Ok(Case::Refute),
            "beta-auto" => Ok(Case::BetaAuto),
            "cones" => Ok(Case::Cones),
            "all" => Ok(Case::All),
            other => Err(format!("unknown case {:?}", other)),
        }
    }
}

/// Run the selected case (or every case plus the fixture-invariant suite)
/// at the configured bounds, in canonical order.
pub fn run_all(case: Case, config: VerifyConfig) -> Result<Vec<VerifyReport>> {
    let mut reports = Vec::new();
    let run = |c: Case| case == Case::All || case == c;
    if run(Case::De) {
        reports.push(timed(|| cases::case_de(config))?);
    }
    if run(Case::Family) {
        let k = config.max_coeff.min(12);
        reports.push(timed(|| verify_family_conjugation(k, config.window.max(k), config))?);
    }
    if run(Case::Gamma) {
        reports.push(timed(|| verify_gamma_compat(config))?);
    }
    if run(Case::Refute) {
        reports.push(timed(|| refute_isomorphism_cases(config.window.max(3), config))?);
    }
    if run(Case::BetaAuto) {
        reports.push(timed(|| cases::case_beta_auto(config))?);
    }
    if run(Case::Cones) {
        reports.push(timed(|| verify_cones(config))?);
    }
    if case == Case::All {
        reports.push(timed(|| cases::fixture_suite(config))?);
    }
    Ok(reports)
}

fn timed(f: impl FnOnce() -> Result<VerifyReport>) -> Result<VerifyReport> {
    let start = std::time::Instant::now();
    let mut report = f()?;
    report.elapsed = start.elapsed();
    Ok(report)
}
