use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linmap::LinMap;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    NotApplicable,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
            Status::NotApplicable => "N/A",
        }
    }
}

/// One verified (or refuted) identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Basis multi-index of the domain on which the identity fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Check {
            name: name.into(),
            status,
            witness: None,
            detail: None,
        }
    }

    pub fn pass(name: impl Into<String>) -> Self {
        Check::new(name, Status::Pass)
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check::new(name, Status::Fail).with_detail(detail)
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        Check::new(name, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn with_witness(mut self, witness: Vec<usize>) -> Self {
        self.witness = Some(witness);
        self
    }
}

/// Ordered list of checks. Order is insertion order, so reports built from
/// the same inputs are identical.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Records whether `lhs == rhs`; on failure the witness is the first
    /// domain basis vector where they differ.
    pub fn compare<F: Scalar>(&mut self, name: &str, lhs: &LinMap<F>, rhs: &LinMap<F>) -> Result<bool> {
        let check = compare_maps(name, lhs, rhs)?;
        let ok = check.status == Status::Pass;
        self.push(check);
        Ok(ok)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.status(name) == Some(Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }
}

pub fn compare_maps<F: Scalar>(name: &str, lhs: &LinMap<F>, rhs: &LinMap<F>) -> Result<Check> {
    Ok(match lhs.first_difference(rhs)? {
        None => Check::pass(name),
        Some(col) => {
            let idx = lhs.domain().multi_index(col);
            Check::new(name, Status::Fail)
                .with_detail(format!("differs on basis vector {idx:?} of {}", lhs.domain()))
                .with_witness(idx)
        }
    })
}
