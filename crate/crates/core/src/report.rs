//! Named checks with residuals.

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The identity being checked, written out.
    pub anchor: String,
    /// Max-abs difference of the two sides; `None` when evaluation failed.
    pub residual: Option<f64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub tol: f64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: &str, tol: f64) -> Self {
        Report { subject: subject.to_string(), tol, checks: Vec::new() }
    }

    pub fn record(&mut self, name: &str, anchor: &str, residual: f64) -> &mut Check {
        let verdict = if residual.is_finite() && residual <= self.tol { Verdict::Pass } else { Verdict::Fail };
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            residual: Some(residual),
            verdict,
            detail: None,
        });
        self.checks.last_mut().unwrap()
    }

    /// Record a computed residual, or the error that prevented computing it.
    pub fn record_result(&mut self, name: &str, anchor: &str, r: Result<f64>) {
        match r {
            Ok(v) => {
                self.record(name, anchor, v);
            }
            Err(e) => self.fail(name, anchor, &e.to_string()),
        }
    }

    pub fn fail(&mut self, name: &str, anchor: &str, why: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            residual: None,
            verdict: Verdict::Fail,
            detail: Some(why.to_string()),
        });
    }

    pub fn skip(&mut self, name: &str, anchor: &str, why: &str) {
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            residual: None,
            verdict: Verdict::Skipped,
            detail: Some(why.to_string()),
        });
    }

    pub fn note(&mut self, name: &str, anchor: &str, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            anchor: anchor.to_string(),
            residual: Some(0.0),
            verdict: Verdict::Pass,
            detail: Some(detail),
        });
    }

    /// Append another report's checks with a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix}.{}", c.name);
            }
            if let Some(r) = c.residual {
                if c.verdict != Verdict::Skipped {
                    c.verdict = if r.is_finite() && r <= self.tol { Verdict::Pass } else { Verdict::Fail };
                }
            }
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().filter_map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&serde_json::to_string(c).expect("check serializes"));
            s.push('\n');
        }
        s
    }
}
