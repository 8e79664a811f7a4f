//! Verification reports shared by the invariant suites.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

/// One checked law at one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub degree: usize,
    pub law: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Number of individual identities checked for this record.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checked: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report {
            suite: suite.into(),
            records: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// Records the outcome of `check`, which returns the number of identities it checked
    /// and the first witness of failure if any.
    pub fn run(
        &mut self,
        degree: usize,
        law: impl Into<String>,
        check: impl FnOnce() -> (u64, Option<String>),
    ) {
        let start = Instant::now();
        let (checked, witness) = check();
        self.records.push(Record {
            degree,
            law: law.into(),
            pass: witness.is_none(),
            witness,
            checked: Some(checked),
            elapsed_us: Some(start.elapsed().as_micros() as u64),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            write!(
                f,
                "[{}] {} degree {} {}",
                if r.pass { "PASS" } else { "FAIL" },
                self.suite,
                r.degree,
                r.law
            )?;
            if let Some(n) = r.checked {
                write!(f, " checked={n}")?;
            }
            if let Some(us) = r.elapsed_us {
                write!(f, " time={us}us")?;
            }
            if let Some(w) = &r.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{}: {}",
            self.suite,
            if self.passed() { "all checks passed" } else { "FAILED" }
        )
    }
}
