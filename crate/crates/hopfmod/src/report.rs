use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::HopfmodError;

pub const TOOL: &str = "hopfmod";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskResult {
    pub task: String,
    pub params: Value,
    pub result: Value,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_hash: String,
    pub results: Vec<TaskResult>,
    pub status: Status,
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Report {
    pub fn new(config_hash: String, results: Vec<TaskResult>) -> Self {
        let status = if results.iter().all(|r| r.pass) {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            tool: TOOL,
            version: VERSION,
            config_hash,
            results,
            status,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

/// Report body for an input error.
pub fn error_report(err: &HopfmodError) -> String {
    let v = json!({
        "tool": TOOL,
        "version": VERSION,
        "status": Status::Error,
        "error": err.to_json(),
    });
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}
