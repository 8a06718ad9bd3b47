use serde::Serialize;
use serde_json::{Map, Value};
use tpcalc_core::verify::Check;

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            name: c.name.clone(),
            expected: c.expected.clone(),
            got: c.got.clone(),
            pass: c.pass,
        }
    }
}

/// Output of one command. `text` is what the text mode prints; the JSON mode
/// serializes everything else.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub result: Value,
    pub checks: Vec<CheckRecord>,
    pub timing_ms: f64,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            result: Value::Null,
            checks: Vec::new(),
            timing_ms: 0.0,
            text: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn check(&mut self, c: &Check) {
        self.text.push(c.to_string());
        self.checks.push(c.into());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_is_not_serialized() {
        let mut r = Report::new("porteous").input("k", 2);
        r.line("c1^2 - c2");
        r.check(&Check {
            name: "x".into(),
            expected: "1".into(),
            got: "1".into(),
            pass: true,
        });
        let v = serde_json::to_value(&r).unwrap();
        assert!(v.get("text").is_none());
        assert_eq!(v["inputs"]["k"], 2);
        assert_eq!(v["checks"][0]["pass"], true);
        assert_eq!(r.text, ["c1^2 - c2", "PASS x: 1"]);
    }
}
