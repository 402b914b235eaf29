//! Experiment reports: versioned JSON with a CSV flattening of per-trial rows.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::LabError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    AssertionFailure,
    /// A converse-direction surprise that does not contradict a proven claim.
    Anomaly,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::AssertionFailure => 2,
            Status::Anomaly => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: String,
    pub seeds: Vec<u64>,
    pub parameters: Map<String, Value>,
    pub results: Map<String, Value>,
    pub rows: Vec<Map<String, Value>>,
    pub status: Status,
    pub messages: Vec<String>,
    pub artifact_version: String,
    pub runtime_ms: u64,
}

impl ExperimentReport {
    pub fn new(experiment: &str, seeds: Vec<u64>) -> Self {
        ExperimentReport {
            schema_version: SCHEMA_VERSION,
            experiment: experiment.to_string(),
            seeds,
            parameters: Map::new(),
            results: Map::new(),
            rows: Vec::new(),
            status: Status::Pass,
            messages: Vec::new(),
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            runtime_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), v.into());
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), v.into());
        self
    }

    pub fn row(&mut self, row: Value) {
        if let Value::Object(m) = row {
            self.rows.push(m);
        }
    }

    /// Hard check: a failure marks the report as an assertion failure.
    pub fn check(&mut self, ok: bool, what: impl Into<String>) -> bool {
        if !ok {
            self.status = Status::AssertionFailure;
            self.messages.push(format!("FAILED: {}", what.into()));
        }
        ok
    }

    /// Soft check: a failure is logged as an anomaly unless something
    /// already failed hard.
    pub fn expect(&mut self, ok: bool, what: impl Into<String>) -> bool {
        if !ok {
            if self.status == Status::Pass {
                self.status = Status::Anomaly;
            }
            self.messages.push(format!("ANOMALY: {}", what.into()));
        }
        ok
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.messages.push(msg.into());
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self, LabError> {
        Ok(serde_json::from_str(s)?)
    }

    /// The report with timing zeroed; identical runs give identical output.
    pub fn deterministic(&self) -> Self {
        ExperimentReport {
            runtime_ms: 0,
            ..self.clone()
        }
    }

    /// Per-trial rows as CSV; columns are the sorted union of row keys.
    pub fn rows_csv(&self) -> Result<String, LabError> {
        let mut header: Vec<&String> = self.rows.iter().flat_map(|r| r.keys()).collect();
        header.sort();
        header.dedup();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header.iter().map(|h| h.as_str()))?;
        for r in &self.rows {
            w.write_record(header.iter().map(|h| match r.get(*h) {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(v) => v.to_string(),
            }))?;
        }
        let bytes = w.into_inner().map_err(|e| LabError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

/// Runs `body`, stamping the report with the elapsed wall time.
pub fn timed(
    body: impl FnOnce() -> Result<ExperimentReport, LabError>,
) -> Result<ExperimentReport, LabError> {
    let start = Instant::now();
    let mut r = body()?;
    r.runtime_ms = start.elapsed().as_millis() as u64;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn status_codes_and_escalation() {
        let mut r = ExperimentReport::new("x", vec![1]);
        assert_eq!(r.exit_code(), 0);
        r.expect(false, "odd");
        assert_eq!(r.exit_code(), 3);
        r.check(false, "broken");
        assert_eq!(r.exit_code(), 2);
        r.expect(false, "odd again");
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.messages.len(), 3);
    }

    #[test]
    fn json_roundtrip_and_csv() {
        let mut r = ExperimentReport::new("demo", vec![3, 4]);
        r.param("k", 4).result("dim", 26);
        r.row(json!({"trial": 0, "ok": true}));
        r.row(json!({"trial": 1, "note": "a,b"}));
        r.runtime_ms = 17;
        let back = ExperimentReport::from_json_str(&r.to_json_string()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.deterministic().runtime_ms, 0);
        let csv = r.rows_csv().unwrap();
        assert_eq!(csv, "note,ok,trial\n,true,0\n\"a,b\",,1\n");
    }
}
