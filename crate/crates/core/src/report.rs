use serde::Serialize;
use serde_json::{Map, Value};

/// Outcome of one verification check: `{check, params, pass, details[]}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Map<String, Value>,
    pub pass: bool,
    /// Free-form status word for checks whose outcome is not pass/fail in
    /// the usual sense (e.g. a conjecture test).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    pub details: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            params: Map::new(),
            pass: true,
            status: None,
            details: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// Records a line of detail without affecting the verdict.
    pub fn note(&mut self, line: impl Into<String>) {
        self.details.push(line.into());
    }

    /// Records a failure.
    pub fn fail(&mut self, line: impl Into<String>) {
        self.pass = false;
        self.details.push(line.into());
    }

    /// Records `line` as a failure unless `ok`.
    pub fn expect(&mut self, ok: bool, line: impl FnOnce() -> String) {
        if !ok {
            self.fail(line());
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report is always serializable")
    }
}
