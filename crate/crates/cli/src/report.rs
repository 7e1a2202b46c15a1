use serde_json::{Map, Value};

/// Ordered `key: value` lines, an optional free-form body, and a verdict.
#[derive(Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
    body: Option<String>,
    failed: bool,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    /// Big integers travel as decimal strings.
    pub fn big(&mut self, key: &str, value: &num_bigint::BigUint) -> &mut Self {
        self.field(key, value.to_string())
    }

    pub fn body(&mut self, text: String) -> &mut Self {
        self.body = Some(text);
        self
    }

    /// Marks the run as a verification failure (exit status 1) and records the
    /// verdict.
    pub fn verdict(&mut self, pass: bool) -> &mut Self {
        self.failed |= !pass;
        self.field("status", if pass { "PASS" } else { "FAIL" })
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.fields {
            s.push_str(k);
            s.push_str(": ");
            s.push_str(&scalar_text(v));
            s.push('\n');
        }
        if let Some(b) = &self.body {
            s.push_str(b);
            if !b.ends_with('\n') {
                s.push('\n');
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut m = Map::new();
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        if let Some(b) = &self.body {
            m.insert("body".into(), Value::String(b.clone()));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("report is valid JSON");
        s.push('\n');
        s
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
