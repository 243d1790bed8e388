//! Check reports: one named identity, its sampled residuals and the verdict.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub skipped: usize,
}

impl Check {
    /// Build a check from per-sample residuals; `None` marks a skipped sample
    /// (pole or conditioning failure). A check with more than half of its
    /// samples skipped fails regardless of the residuals it did get.
    pub fn from_residuals<I>(name: impl Into<String>, tolerance: f64, residuals: I) -> Self
    where
        I: IntoIterator<Item = Option<f64>>,
    {
        let mut samples = 0;
        let mut skipped = 0;
        let mut max_residual: f64 = 0.0;
        let mut finite = true;
        for r in residuals {
            samples += 1;
            match r {
                Some(v) if v.is_finite() => max_residual = max_residual.max(v),
                Some(_) => finite = false,
                None => skipped += 1,
            }
        }
        if !finite {
            max_residual = f64::INFINITY;
        }
        let usable = samples - skipped;
        let pass = finite && usable > 0 && 2 * skipped <= samples && max_residual < tolerance;
        Self { name: name.into(), samples, max_residual, tolerance, pass, skipped }
    }

    /// A single deterministic comparison.
    pub fn single(name: impl Into<String>, tolerance: f64, residual: f64) -> Self {
        Self::from_residuals(name, tolerance, [Some(residual)])
    }

    /// Boolean property, reported as residual 0 or 1 against tolerance 0.5.
    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Self::single(name, 0.5, if holds { 0.0 } else { 1.0 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub overall_pass: bool,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>, params: BTreeMap<String, String>, checks: Vec<Check>) -> Self {
        let overall_pass = checks.iter().all(|c| c.pass);
        Self { schema: SCHEMA_VERSION, suite: suite.into(), params, checks, overall_pass }
    }

    /// Concatenate several reports under one suite name.
    pub fn merge(suite: impl Into<String>, params: BTreeMap<String, String>, parts: Vec<CheckReport>) -> Self {
        let checks = parts
            .into_iter()
            .flat_map(|r| {
                let prefix = r.suite;
                r.checks.into_iter().map(move |mut c| {
                    c.name = format!("{prefix}.{}", c.name);
                    c
                })
            })
            .collect();
        Self::new(suite, params, checks)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,samples,max_residual,tolerance,pass,skipped\n");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{},{},{:.16e},{:.16e},{},{}",
                c.name, c.samples, c.max_residual, c.tolerance, c.pass, c.skipped
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {:<40} max_residual={:.3e} tol={:.1e} samples={} skipped={}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.tolerance,
                c.samples,
                c.skipped
            );
        }
        let _ = writeln!(out, "overall {}", if self.overall_pass { "PASS" } else { "FAIL" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skipped_majority_fails() {
        let c = Check::from_residuals("x", 1e-8, [Some(0.0), None, None]);
        assert!(!c.pass);
        assert_eq!(c.skipped, 2);
        let c = Check::from_residuals("x", 1e-8, [Some(1e-9), None, Some(0.0)]);
        assert!(c.pass);
    }

    #[test]
    fn non_finite_residual_fails() {
        let c = Check::from_residuals("x", 1.0, [Some(f64::NAN)]);
        assert!(!c.pass);
    }

    #[test]
    fn overall_is_conjunction() {
        let r = CheckReport::new("s", BTreeMap::new(), vec![Check::flag("a", true), Check::flag("b", false)]);
        assert!(!r.overall_pass);
        let r = CheckReport::new("s", BTreeMap::new(), vec![Check::flag("a", true)]);
        assert!(r.overall_pass);
    }
}
