use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// A computed value with nothing to compare against.
    Info,
}

impl Status {
    fn word(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skip",
            Status::Info => "",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub id: String,
    pub expected: Option<String>,
    pub got: String,
    pub status: Status,
    /// Wall time, only filled in with `--timings` so that reports stay
    /// reproducible by default.
    pub millis: Option<u64>,
}

impl Case {
    pub fn info(id: impl Into<String>, got: impl ToString) -> Case {
        Case { id: id.into(), expected: None, got: got.to_string(), status: Status::Info, millis: None }
    }

    pub fn compare(id: impl Into<String>, expected: impl ToString, got: impl ToString) -> Case {
        let (e, g) = (expected.to_string(), got.to_string());
        let status = if e == g { Status::Pass } else { Status::Fail };
        Case { id: id.into(), expected: Some(e), got: g, status, millis: None }
    }

    pub fn skipped(id: impl Into<String>, why: impl ToString) -> Case {
        Case { id: id.into(), expected: None, got: why.to_string(), status: Status::Skipped, millis: None }
    }
}

/// The run configuration echoed into every report. The worker count is
/// left out on purpose: it must not change the output.
#[derive(Debug, Clone, Serialize)]
pub struct ReportConfig {
    pub n: Option<usize>,
    pub seed: u64,
    pub closure_degree: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: ReportConfig,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.cases.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let checks = self.cases.iter().any(|c| c.status != Status::Info);
        for c in &self.cases {
            let t = c.millis.map(|m| format!(" ({m} ms)")).unwrap_or_default();
            match (&c.expected, c.status) {
                (None, Status::Info) => writeln!(s, "{}: {}{t}", c.id, c.got),
                (None, _) => writeln!(s, "{:<4} {}: {}{t}", c.status.word(), c.id, c.got),
                (Some(e), _) => writeln!(s, "{:<4} {}: expected {e}, got {}{t}", c.status.word(), c.id, c.got),
            }
            .expect("write to string");
        }
        if checks {
            let run = self.cases.iter().filter(|c| matches!(c.status, Status::Pass | Status::Fail)).count();
            writeln!(s, "{run} checked, {} failed", self.failed()).expect("write to string");
        }
        s
    }
}
