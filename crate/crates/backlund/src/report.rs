//! Report assembly shared by the CLI commands. A run produces named checks
//! (scalar residual vs tolerance), optional residual and convergence
//! reports, and a single verdict that is the conjunction of everything
//! enabled.

use crate::config::{FaultSpec, Scenario};
use crate::residual::{ConvergenceReport, ResidualReport};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max: f64,
    pub rms: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, max: f64, rms: f64, tolerance: f64) -> Self {
        let pass = max.is_finite() && max <= tolerance;
        CheckResult { name: name.into(), max, rms, tolerance, pass }
    }

    /// A check with a single measured value, reported as both max and rms.
    pub fn scalar(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckResult::new(name, value, value, tolerance)
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DispersionSummary {
    pub k: f64,
    pub s: f64,
    pub phi: f64,
    pub r1: f64,
    pub r2: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedReport {
    pub name: String,
    #[serde(flatten)]
    pub report: ResidualReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedConvergence {
    pub name: String,
    pub pass: bool,
    #[serde(flatten)]
    pub report: ConvergenceReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub scenario: Scenario,
    pub inputs: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dispersion: Option<DispersionSummary>,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residual_reports: Vec<NamedReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub convergence_reports: Vec<NamedConvergence>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub faults: Vec<FaultSpec>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub verdict: &'static str,
}

impl ReportBundle {
    pub fn new(scenario: Scenario, inputs: serde_json::Value) -> Self {
        ReportBundle {
            scenario,
            inputs,
            dispersion: None,
            checks: Vec::new(),
            residual_reports: Vec::new(),
            convergence_reports: Vec::new(),
            faults: Vec::new(),
            notes: Vec::new(),
            verdict: "fail",
        }
    }

    pub fn push_check(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn push_convergence(&mut self, name: impl Into<String>, report: ConvergenceReport) {
        let pass = report.second_order();
        self.convergence_reports.push(NamedConvergence { name: name.into(), pass, report });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Settle the verdict: pass iff every check and every convergence fit
    /// passed. Call after all results are in.
    pub fn finalize(&mut self) -> bool {
        let pass = self.checks.iter().all(|c| c.pass)
            && self.convergence_reports.iter().all(|c| c.pass);
        self.verdict = if pass { "pass" } else { "fail" };
        pass
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    /// Human-readable summary, one line per result.
    pub fn text_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        lines.push(format!("scenario: {}", self.scenario.name()));
        for fault in &self.faults {
            lines.push(format!("fault: {}", fault.label()));
        }
        if let Some(d) = &self.dispersion {
            lines.push(format!("dispersion: k = {:.9}  s = {:.9}  phi = {:.9}", d.k, d.s, d.phi));
            lines.push(format!("dispersion residuals: r1 = {:.3e}  r2 = {:.3e}", d.r1, d.r2));
        }
        for check in &self.checks {
            lines.push(format!(
                "check {:<24} max = {:.3e}  rms = {:.3e}  tol = {:.1e}  {}",
                check.name,
                check.max,
                check.rms,
                check.tolerance,
                if check.pass { "pass" } else { "FAIL" }
            ));
        }
        for conv in &self.convergence_reports {
            lines.push(format!(
                "order {:<24} slope = {:<9} {}",
                conv.name,
                conv.report.slope_text(),
                if conv.pass { "pass" } else { "FAIL" }
            ));
        }
        for note in &self.notes {
            lines.push(format!("note: {note}"));
        }
        lines.push(format!("verdict: {}", self.verdict));
        lines
    }

    pub fn to_json(&self) -> crate::error::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
