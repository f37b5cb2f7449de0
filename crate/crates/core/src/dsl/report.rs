use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A budget-limited computation did not finish.
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssertionResult {
    pub index: usize,
    pub text: String,
    pub status: Status,
    pub detail: String,
    pub citation: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub script: String,
    pub assertions: Vec<AssertionResult>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(script: impl Into<String>, mut assertions: Vec<AssertionResult>) -> Self {
        assertions.sort_by_key(|a| a.index);
        let mut summary = Summary::default();
        for a in &assertions {
            match a.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Unknown => summary.unknown += 1,
            }
        }
        VerificationReport { script: script.into(), assertions, summary }
    }

    /// 0 when everything passed, 1 on any failure, 2 when some assertion
    /// is undecided and none failed.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.unknown > 0 {
            2
        } else {
            0
        }
    }

    /// Copy with timings zeroed, for byte-for-byte comparison of runs.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        for a in &mut r.assertions {
            a.elapsed_ms = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.script)?;
        for a in &self.assertions {
            writeln!(f, "  [{}] #{} {}", a.status, a.index, a.text)?;
            writeln!(f, "        {} ({:.1} ms)", a.detail, a.elapsed_ms)?;
            if let Some(c) = &a.citation {
                writeln!(f, "        source: {c}")?;
            }
        }
        write!(
            f,
            "  {} passed, {} failed, {} unknown",
            self.summary.pass, self.summary.fail, self.summary.unknown
        )
    }
}
