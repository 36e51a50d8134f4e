//! Verification report: named checks with a measured value, its bound,
//! and a pass flag, rendered as a deterministic line-oriented document.

/// One verification check. `measured` is either a worst-case deviation
/// (bounded by `bound`) or, for reference-value and ratio checks, the
/// quantity itself with `bound` limiting its distance from the reference;
/// `pass` always records the authoritative outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CheckResult {
    /// Deviation-style check: passes when `measured <= bound`.
    pub fn bounded(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            bound,
            pass: measured <= bound,
        }
    }

    /// Reference-style check: reports the value itself, passes when it
    /// lies within `bound` of `reference`.
    pub fn near(name: impl Into<String>, measured: f64, reference: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            bound,
            pass: (measured - reference).abs() <= bound,
        }
    }
}

/// Outcome of a verification run.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Render the report: a header, one line per check (name, measured value,
/// bound, PASS/FAIL), and the overall verdict. Output depends only on the
/// check list, so identical runs emit identical bytes.
pub fn emit_report(report: &VerificationReport) -> String {
    let mut out = String::new();
    out.push_str("verification report\n");
    out.push_str(&format!(
        "{:<36} {:>14} {:>10}  status\n",
        "check", "measured", "bound"
    ));
    for c in &report.checks {
        out.push_str(&format!(
            "{:<36} {:>14.6e} {:>10.1e}  {}\n",
            c.name,
            c.measured,
            c.bound,
            if c.pass { "PASS" } else { "FAIL" }
        ));
    }
    out.push_str(&format!(
        "overall: {}\n",
        if report.overall_pass() { "PASS" } else { "FAIL" }
    ));
    out
}
