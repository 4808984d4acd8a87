//! Machine-readable check reports, shared by the verification suites.

use serde::Serialize;

/// One failing input of a check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub p: String,
    pub q: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    pub detail: String,
}

impl Counterexample {
    pub fn pair(p: impl Into<String>, q: impl Into<String>, detail: impl Into<String>) -> Self {
        Counterexample {
            p: p.into(),
            q: q.into(),
            r: None,
            detail: detail.into(),
        }
    }

    pub fn triple(
        p: impl Into<String>,
        q: impl Into<String>,
        r: impl Into<String>,
        detail: impl Into<String>,
    ) -> Self {
        Counterexample {
            r: Some(r.into()),
            ..Counterexample::pair(p, q, detail)
        }
    }
}

/// An informational comparison attached to a report; findings never affect
/// the pass flag.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Finding {
    pub p: String,
    pub q: String,
    pub rule: String,
    pub oracle: String,
    pub published: String,
    pub rule_equals_oracle: bool,
    pub rule_equals_published: bool,
}

/// Outcome of one verification check at one rank. CI gates on `pass`;
/// `counterexamples` is empty exactly when `pass` is true.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: &'static str,
    pub n: usize,
    pub pass: bool,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<char>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub findings: Option<Vec<Finding>>,
}

impl CheckReport {
    pub fn new(check: &'static str, n: usize, counterexamples: Vec<Counterexample>, elapsed_ms: u128) -> Self {
        CheckReport {
            check,
            n,
            pass: counterexamples.is_empty(),
            counterexamples,
            elapsed_ms,
            algebra: None,
            findings: None,
        }
    }

    pub fn with_algebra(mut self, letter: char) -> Self {
        self.algebra = Some(letter);
        self
    }

    pub fn with_findings(mut self, findings: Vec<Finding>) -> Self {
        if !findings.is_empty() {
            self.findings = Some(findings);
        }
        self
    }

    /// One human line: `rule n=4 [D]: PASS (12 ms)`.
    pub fn summary_line(&self) -> String {
        let algebra = self
            .algebra
            .map(|a| format!(" [{a}]"))
            .unwrap_or_default();
        let status = if self.pass { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{} n={}{algebra}: {status} ({} ms)",
            self.check, self.n, self.elapsed_ms
        );
        if !self.pass {
            line.push_str(&format!(", {} counterexample(s)", self.counterexamples.len()));
        }
        line
    }
}
