use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const RESOURCE: i32 = 3;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Everything computed; every checked property holds.
    Ok,
    /// Some checked property fails.
    Violated,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => exit::OK,
            Status::Violated => exit::VIOLATED,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claims: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_ab: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub primes: Vec<u64>,
}

/// The JSON document printed by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub command: String,
    pub parameters: Parameters,
    pub status: Status,
    pub outputs: Value,
    /// Files written by the command.
    #[serde(default)]
    pub artifacts: Vec<String>,
    /// Wall-clock time; the only field allowed to differ between identical runs.
    pub timing_ms: u64,
}

impl RunResult {
    /// The document without `timing_ms`.
    pub fn mathematical_fields(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("results serialize");
        v.as_object_mut().expect("object").remove("timing_ms");
        v
    }
}
