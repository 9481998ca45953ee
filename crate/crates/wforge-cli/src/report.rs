//! Serializable verification and comparison reports. Field order is
//! struct order, so JSON output is deterministic across runs.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StructureInfo {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub n: usize,
    pub degree_sums: [usize; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquationReport {
    pub index: usize,
    pub label: String,
    /// Exact residual as a rational string (exact path) or decimal
    /// (float path).
    pub residual: String,
    pub residual_float: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    /// "exact" or "numeric".
    pub kind: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equations: Option<Vec<EquationReport>>,
}

impl CheckReport {
    pub fn exact(name: &str, pass: bool, residual: Option<String>) -> Self {
        CheckReport {
            name: name.to_string(),
            kind: "exact".to_string(),
            pass,
            skipped: None,
            residual,
            max_residual: None,
            tolerance: None,
            skipped_points: None,
            equations: None,
        }
    }

    pub fn numeric(name: &str, pass: bool, max_residual: f64, tolerance: f64) -> Self {
        CheckReport {
            name: name.to_string(),
            kind: "numeric".to_string(),
            pass,
            skipped: None,
            residual: None,
            max_residual: Some(max_residual),
            tolerance: Some(tolerance),
            skipped_points: None,
            equations: None,
        }
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.residual = Some(note);
        self
    }

    pub fn skipped(name: &str, kind: &str, reason: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            kind: kind.to_string(),
            pass: true,
            skipped: Some(reason.to_string()),
            residual: None,
            max_residual: None,
            tolerance: None,
            skipped_points: None,
            equations: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<String>,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn failing_check(&self) -> Option<&CheckReport> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("subject: {}\n", self.subject));
        if let Some(s) = &self.structure {
            out.push_str(&format!(
                "structure: p={} q={} r={} n={} (degree sums {:?})\n",
                s.p, s.q, s.r, s.n, s.degree_sums
            ));
        }
        if let Some(c) = &self.classification {
            out.push_str(&format!("classification: {}\n", c));
        }
        for c in &self.checks {
            let status = if c.skipped.is_some() {
                "SKIP"
            } else if c.pass {
                "PASS"
            } else {
                "FAIL"
            };
            out.push_str(&format!("[{}] {} ({})", status, c.name, c.kind));
            if let Some(r) = &c.residual {
                out.push_str(&format!(": residual = {}", r));
            }
            if let Some(m) = c.max_residual {
                out.push_str(&format!(": max residual = {:.3e}", m));
            }
            if let Some(t) = c.tolerance {
                out.push_str(&format!(" (tolerance {:.1e})", t));
            }
            if let Some(s) = c.skipped_points {
                out.push_str(&format!(", skipped points: {}", s));
            }
            if let Some(reason) = &c.skipped {
                out.push_str(&format!(" [skipped: {}]", reason));
            }
            if let Some(eqs) = &c.equations {
                let bad: Vec<usize> = eqs.iter().filter(|e| !e.pass).map(|e| e.index).collect();
                if bad.is_empty() {
                    out.push_str(&format!(": all {} equations satisfied", eqs.len()));
                } else {
                    out.push_str(&format!(": violated equations {:?}", bad));
                }
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.passed { "PASS" } else { "FAIL" }
        ));
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FingerprintReport {
    /// Canonical energy density of each subject's g at matched sample
    /// points (auxiliary, not a congruence decision).
    pub energy_a: Vec<f64>,
    pub energy_b: Vec<f64>,
    pub max_difference: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareReport {
    pub schema_version: u32,
    pub subject_a: String,
    pub subject_b: String,
    /// "coincident", "mirror-congruent", "distinct", or
    /// "undetermined by implemented criteria".
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// b²c+d as a string, when the r12-vs-r3 predicate applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicate_value: Option<String>,
    /// The equivalent case-3 pair (A, B, C) exhibited when the
    /// predicate holds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_case3: Option<[String; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<FingerprintReport>,
}

impl CompareReport {
    pub fn human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("A: {}\n", self.subject_a));
        out.push_str(&format!("B: {}\n", self.subject_b));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        if let Some(r) = &self.reason {
            out.push_str(&format!("reason: {}\n", r));
        }
        if let Some(p) = &self.predicate_value {
            out.push_str(&format!("b²c+d = {}\n", p));
        }
        if let Some(r3) = &self.reduced_case3 {
            out.push_str(&format!(
                "reduced case-3 pair: A={} B={} C={}\n",
                r3[0], r3[1], r3[2]
            ));
        }
        if let Some(fp) = &self.fingerprint {
            out.push_str(&format!(
                "canonical-energy fingerprint max difference: {:.3e} (auxiliary)\n",
                fp.max_difference
            ));
        }
        out
    }
}
