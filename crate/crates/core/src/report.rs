//! Structured pass/fail records produced by every verification suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{DunklError, Result};

/// One verified identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    /// The identity or statement being checked, in words.
    pub anchor: String,
    /// `None` when the computation itself failed.
    pub residual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes iff `residual <= tol` and the residual is finite.
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, residual: f64, tol: f64) -> Self {
        let finite = residual.is_finite();
        Self {
            id: id.into(),
            anchor: anchor.into(),
            residual: finite.then_some(residual),
            tol,
            pass: finite && residual <= tol,
            detail: None,
        }
    }

    /// A check whose computation returned an error.
    pub fn failed(id: impl Into<String>, anchor: impl Into<String>, tol: f64, err: &DunklError) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            residual: None,
            tol,
            pass: false,
            detail: Some(err.to_string()),
        }
    }

    pub fn from_result(
        id: impl Into<String>,
        anchor: impl Into<String>,
        residual: Result<f64>,
        tol: f64,
    ) -> Self {
        match residual {
            Ok(r) => Self::new(id, anchor, r, tol),
            Err(e) => Self::failed(id, anchor, tol, &e),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

/// Tabulated data attached to a report for plotting.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Curve {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:e}")).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub status: String,
    pub checks: Vec<Check>,
    pub env: BTreeMap<String, serde_json::Value>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub curves: BTreeMap<String, Curve>,
}

#[derive(Serialize)]
struct Body<'a> {
    suite: &'a str,
    status: &'a str,
    checks: &'a [Check],
    env: &'a BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            status: "pass".into(),
            checks: Vec::new(),
            env: BTreeMap::new(),
            elapsed_ms: 0,
            curves: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
        self.refresh_status();
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
        self.refresh_status();
    }

    /// Merges another report's checks and curves, prefixing nothing.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.curves.extend(other.curves);
        for (k, v) in other.env {
            self.env.entry(k).or_insert(v);
        }
        self.refresh_status();
    }

    pub fn set_env(&mut self, key: &str, value: impl Serialize) {
        self.env.insert(
            key.to_string(),
            serde_json::to_value(value).unwrap_or(serde_json::Value::Null),
        );
    }

    fn refresh_status(&mut self) {
        self.status = if self.passed() { "pass" } else { "fail" }.into();
    }

    /// AND of all check outcomes; an empty report does not pass.
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.residual.unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// Everything except wall time, for byte-level determinism checks.
    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&Body {
            suite: &self.suite,
            status: &self.status,
            checks: &self.checks,
            env: &self.env,
        })
        .expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("suite,id,anchor,residual,tol,pass\n");
        for c in &self.checks {
            let residual = c.residual.map(|r| format!("{r:e}")).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},\"{}\",{},{:e},{}",
                self.suite,
                c.id,
                c.anchor.replace('"', "'"),
                residual,
                c.tol,
                c.pass
            );
        }
        s
    }

    pub fn add_curve(&mut self, name: &str, curve: Curve) {
        self.curves.insert(name.to_string(), curve);
    }

    /// CSV for a named curve. Unknown or empty curves are an error.
    pub fn plot_data(&self, quantity: &str) -> Result<String> {
        let c = self.curves.get(quantity).ok_or_else(|| {
            let known: Vec<&str> = self.curves.keys().map(String::as_str).collect();
            DunklError::Usage(format!(
                "report has no curve {quantity:?} (available: {})",
                if known.is_empty() { "none".to_string() } else { known.join(", ") }
            ))
        })?;
        if c.rows.is_empty() {
            return Err(DunklError::Usage(format!("curve {quantity:?} is empty")));
        }
        Ok(c.to_csv())
    }

    /// One line per check, for terminal output.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let r = c.residual.map(|r| format!("{r:.3e}")).unwrap_or_else(|| "error".into());
            let _ = writeln!(
                s,
                "[{}] {:<40} residual {:>10}  tol {:.1e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                r,
                c.tol
            );
        }
        let _ = write!(s, "{}: {}", self.suite, self.status);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_is_and_of_checks() {
        let mut r = VerificationReport::new("demo");
        assert!(!r.passed());
        r.push(Check::new("a", "x", 0.0, 0.0));
        assert!(r.passed());
        r.push(Check::new("b", "y", 2.0, 1.0));
        assert_eq!(r.status, "fail");
        r.push(Check::new("c", "z", f64::NAN, 1.0));
        assert!(!r.check("c").unwrap().pass);
    }

    #[test]
    fn body_excludes_elapsed_time() {
        let mut r = VerificationReport::new("demo");
        r.push(Check::new("a", "x", 1e-3, 1e-2));
        r.elapsed_ms = 5;
        let b1 = r.body_json();
        r.elapsed_ms = 9;
        assert_eq!(b1, r.body_json());
        assert!(r.to_json().contains("elapsed_ms"));
        assert!(!b1.contains("elapsed_ms"));
    }

    #[test]
    fn plot_data_contract() {
        let mut r = VerificationReport::new("demo");
        assert!(r.plot_data("kernel-curve").is_err());
        r.add_curve("empty", Curve::new(&["x"]));
        assert!(r.plot_data("empty").is_err());
        let mut c = Curve::new(&["x", "y"]);
        c.push(vec![1.0, 2.0]);
        r.add_curve("k", c);
        let csv = r.plot_data("k").unwrap();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.starts_with("x,y\n"));
    }
}
