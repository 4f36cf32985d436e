//! Pass/fail evidence produced by the exhaustive checkers.
//!
//! Every checker returns a [`Report`] listing what was verified, how many
//! cases were swept, and a witness for the first failure when one exists.
//! Reports serialize to JSON for the command-line tools.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub check: String,
    pub status: Status,
    /// Number of individual cases swept by this check.
    pub cases: usize,
    /// Human-readable witness of the first failure, absent on pass.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, cases: usize) -> Self {
        Check {
            check: name.into(),
            status: Status::Pass,
            cases,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, cases: usize, witness: impl Into<String>) -> Self {
        Check {
            check: name.into(),
            status: Status::Fail,
            cases,
            witness: Some(witness.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn total_cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }
}
