use serde_json::{json, Map, Value};

use crate::Format;

/// One command's output: `{command, group, inputs, results, verdicts}` plus a
/// plain-text rendering.
pub struct Report {
    command: &'static str,
    group: String,
    inputs: Map<String, Value>,
    results: Value,
    verdicts: Map<String, Value>,
    // verdicts that make the process exit nonzero when false
    required: Vec<String>,
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, group: impl Into<String>) -> Self {
        Report {
            command,
            group: group.into(),
            inputs: Map::new(),
            results: json!({}),
            verdicts: Map::new(),
            required: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn results(&mut self, value: Value) -> &mut Self {
        self.results = value;
        self
    }

    /// Informational verdict.
    pub fn verdict(&mut self, key: &str, value: bool) -> &mut Self {
        self.verdicts.insert(key.to_string(), Value::Bool(value));
        self
    }

    /// Verdict that must hold for a zero exit status.
    pub fn require(&mut self, key: &str, value: bool) -> &mut Self {
        self.required.push(key.to_string());
        self.verdict(key, value)
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn ok(&self) -> bool {
        self.required
            .iter()
            .all(|k| self.verdicts.get(k) == Some(&Value::Bool(true)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "group": self.group,
            "inputs": self.inputs,
            "results": self.results,
            "verdicts": self.verdicts,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Human => {
                let mut s = format!("{} {}", self.command, self.group);
                for (k, v) in &self.inputs {
                    s.push_str(&format!(" {k}={}", plain(v)));
                }
                s.push('\n');
                for l in &self.lines {
                    s.push_str(l);
                    s.push('\n');
                }
                for (k, v) in &self.verdicts {
                    s.push_str(&format!("{k}: {}\n", plain(v)));
                }
                s
            }
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
