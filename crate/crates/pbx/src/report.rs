use serde_json::{Map, Value};

/// Exit statuses shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Success, or the checked property holds.
    Holds = 0,
    /// The checked property is false.
    Fails = 1,
    Usage = 2,
    /// The budget ran out before an answer.
    Inconclusive = 3,
}

/// Ordered `key: value` entries plus a one-line summary.
///
/// Text output prints each scalar as `key: value`, each list element on
/// its own `key: item` line, and the summary last as a `#` comment.
pub struct Report {
    entries: Vec<(String, Value)>,
    summary: String,
    /// Text printed as is instead of the entries, outside JSON mode.
    raw: Option<String>,
}

impl Report {
    pub fn new() -> Report {
        Report { entries: Vec::new(), summary: String::new(), raw: None }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Report {
        self.entries.push((key.to_string(), value.into()));
        self
    }

    pub fn list<T: Into<Value>>(&mut self, key: &str, items: impl IntoIterator<Item = T>) -> &mut Report {
        let items: Vec<Value> = items.into_iter().map(Into::into).collect();
        self.put(key, Value::Array(items))
    }

    pub fn summary(&mut self, text: impl Into<String>) -> &mut Report {
        self.summary = text.into();
        self
    }

    pub fn raw(&mut self, key: &str, text: String) -> &mut Report {
        self.put(key, text.clone());
        self.raw = Some(text);
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut obj = Map::new();
            for (k, v) in &self.entries {
                obj.insert(k.clone(), v.clone());
            }
            obj.insert("summary".into(), Value::String(self.summary.clone()));
            return serde_json::to_string_pretty(&Value::Object(obj)).expect("plain values serialize") + "\n";
        }
        if let Some(text) = &self.raw {
            return text.clone();
        }
        let mut out = String::new();
        for (k, v) in &self.entries {
            match v {
                Value::Array(items) => {
                    for item in items {
                        out.push_str(&format!("{k}: {}\n", scalar(item)));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", scalar(v))),
            }
        }
        if !self.summary.is_empty() {
            out.push_str(&format!("# {}\n", self.summary));
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
