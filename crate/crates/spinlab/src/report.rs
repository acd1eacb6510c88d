//! Check records, verification reports, and the three output renderers.

use serde::Serialize;

/// One verified identity: a named residual against a pinned tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    #[serde(rename = "twoS")]
    pub two_s: Option<u32>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl IdentityCheck {
    pub fn new(
        name: impl Into<String>,
        two_s: Option<u32>,
        indices: Option<(u32, u32)>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        IdentityCheck {
            name: name.into(),
            two_s,
            k: indices.map(|p| p.0),
            l: indices.map(|p| p.1),
            residual,
            tolerance,
            passed: residual.is_finite() && residual < tolerance,
        }
    }

    /// A boolean check reported through the residual convention:
    /// residual 0 when `ok`, 1 when not.
    pub fn boolean(name: impl Into<String>, two_s: Option<u32>, ok: bool) -> Self {
        IdentityCheck::new(name, two_s, None, if ok { 0.0 } else { 1.0 }, 0.5)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub max_residual: f64,
}

/// A batch of checks for one verified statement family.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<IdentityCheck>,
    pub summary: Summary,
    /// What mathematical statement the checks certify, in plain words.
    pub provenance: String,
}

impl VerificationReport {
    pub fn new(
        suite: impl Into<String>,
        provenance: impl Into<String>,
        checks: Vec<IdentityCheck>,
    ) -> Self {
        let summary = Summary {
            total: checks.len(),
            passed: checks.iter().filter(|c| c.passed).count(),
            max_residual: checks
                .iter()
                .map(|c| c.residual)
                .fold(0.0, |a: f64, b| if b.is_finite() { a.max(b) } else { f64::INFINITY }),
        };
        VerificationReport {
            suite: suite.into(),
            checks,
            summary,
            provenance: provenance.into(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.passed == self.summary.total
    }
}

#[derive(Serialize)]
struct ReportWithEcho<'a, C: Serialize> {
    suite: &'a str,
    checks: &'a [IdentityCheck],
    summary: &'a Summary,
    provenance: &'a str,
    config_echo: &'a C,
}

/// Serialise reports as a JSON array, echoing the run configuration into
/// each object. Field order is fixed by the struct definitions, so equal
/// inputs yield byte-identical output.
pub fn render_json<C: Serialize>(reports: &[VerificationReport], config: &C) -> String {
    let wrapped: Vec<ReportWithEcho<'_, C>> = reports
        .iter()
        .map(|r| ReportWithEcho {
            suite: &r.suite,
            checks: &r.checks,
            summary: &r.summary,
            provenance: &r.provenance,
            config_echo: config,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&wrapped).expect("reports are serializable");
    out.push('\n');
    out
}

/// Flat CSV with one row per check.
pub fn render_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("suite,name,twoS,k,l,residual,tolerance,passed\n");
    for report in reports {
        for c in &report.checks {
            let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{:e},{:e},{}\n",
                report.suite,
                c.name,
                opt(c.two_s),
                opt(c.k),
                opt(c.l),
                c.residual,
                c.tolerance,
                c.passed
            ));
        }
    }
    out
}

/// Human-readable summary tables.
pub fn render_markdown<C: Serialize>(reports: &[VerificationReport], config: &C) -> String {
    let mut out = String::new();
    out.push_str("# Verification report\n\n");
    if let Ok(cfg) = serde_json::to_string(config) {
        out.push_str(&format!("Configuration: `{cfg}`\n\n"));
    }
    for report in reports {
        out.push_str(&format!(
            "## {} — {}\n\n{} of {} checks passed, max residual {:.3e}\n\n",
            report.suite,
            report.provenance,
            report.summary.passed,
            report.summary.total,
            report.summary.max_residual
        ));
        out.push_str("| check | twoS | k | l | residual | tolerance | passed |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for c in &report.checks {
            let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_else(|| "–".into());
            out.push_str(&format!(
                "| {} | {} | {} | {} | {:.3e} | {:.1e} | {} |\n",
                c.name,
                opt(c.two_s),
                opt(c.k),
                opt(c.l),
                c.residual,
                c.tolerance,
                if c.passed { "yes" } else { "**NO**" }
            ));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts_failures() {
        let checks = vec![
            IdentityCheck::new("a", Some(3), None, 1e-12, 1e-10),
            IdentityCheck::new("b", Some(3), Some((0, 1)), 2e-3, 1e-10),
        ];
        let report = VerificationReport::new("demo", "demo statements", checks);
        assert_eq!(report.summary.total, 2);
        assert_eq!(report.summary.passed, 1);
        assert!(!report.all_passed());
        assert!((report.summary.max_residual - 2e-3).abs() < 1e-15);
    }

    #[test]
    fn renderers_are_deterministic() {
        let checks = vec![IdentityCheck::new("a", None, None, 1e-12, 1e-10)];
        let report = vec![VerificationReport::new("demo", "p", checks)];
        let cfg = serde_json::json!({"seed": 7});
        assert_eq!(render_json(&report, &cfg), render_json(&report, &cfg));
        let csv = render_csv(&report);
        assert!(csv.starts_with("suite,name,twoS,k,l,"));
        assert!(csv.contains("demo,a,,,,"));
        assert!(render_markdown(&report, &cfg).contains("| a |"));
    }
}
