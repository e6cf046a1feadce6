//! Pass/fail records shared by every verifier.

use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One check: a stable id, the relation it exercises, and the residual or
/// difference rendered as a string (`"0"` on success).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        let status = if pass { Status::Pass } else { Status::Fail };
        Self { id: id.into(), anchor: anchor.into(), status, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn check(&mut self, id: impl Into<String>, anchor: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.push(CheckRecord::new(id, anchor, pass, detail));
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed())
    }

    /// Sorts records by id so output is independent of evaluation order.
    pub fn sorted(mut self) -> Self {
        self.records.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }
}
