use serde::{Deserialize, Serialize};

/// One failing case of a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: usize,
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of one verification suite; serialized as a single JSON line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub p: u64,
    pub precision: u32,
    pub maxdeg: u32,
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
    pub pass: bool,
}

impl Report {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report fields are plain data")
    }
}
