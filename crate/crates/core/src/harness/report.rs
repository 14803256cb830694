use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::oracle::{OracleCallLog, OracleCallRecord};

/// Hex SHA-256 of the raw instance bytes.
pub fn instance_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: String,
    pub instance_digest: String,
    pub answer: Value,
    pub total_oracle_cost: u64,
    pub calls: Vec<OracleCallRecord>,
    /// Seconds.
    pub wall_time: f64,
}

impl RunReport {
    pub fn new(problem: impl Into<String>, digest: String, answer: Value, log: OracleCallLog, wall_time: f64) -> Self {
        RunReport {
            problem: problem.into(),
            instance_digest: digest,
            answer,
            total_oracle_cost: log.total_cost(),
            calls: log.calls,
            wall_time,
        }
    }

    /// Whether the stated total equals the sum of call sizes and every
    /// call is charged its size.
    pub fn reconciles(&self) -> bool {
        self.calls.iter().all(|c| c.charged_cost == c.size)
            && self.calls.iter().map(|c| c.size).sum::<u64>() == self.total_oracle_cost
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}
