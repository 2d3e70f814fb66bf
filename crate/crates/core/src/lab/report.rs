//! Structured pass/fail records for the verification checks.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Outcome of one check.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
}

/// One verification record. Serializes with bit-exact keys
/// `check_id, params, status, details, elapsed_ms`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub status: Status,
    pub details: String,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs a check body, timing it and translating a budget trip into the
/// `budget_exceeded` status. Any other error becomes a failure record;
/// a suite never aborts on a single check.
pub fn run_check(
    check_id: impl Into<String>,
    params: BTreeMap<String, serde_json::Value>,
    body: impl FnOnce() -> Result<(Status, String)>,
) -> VerificationReport {
    let start = Instant::now();
    let (status, details) = match body() {
        Ok(outcome) => outcome,
        Err(Error::BudgetExceeded) => (Status::BudgetExceeded, "budget exceeded".to_string()),
        Err(other) => (Status::Fail, format!("error: {other}")),
    };
    VerificationReport {
        check_id: check_id.into(),
        params,
        status,
        details,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Convenience builder for the `params` map.
pub fn params_from<const N: usize>(
    pairs: [(&str, serde_json::Value); N],
) -> BTreeMap<String, serde_json::Value> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}
