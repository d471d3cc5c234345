//! A report is one JSON value; table mode is a plain rendering of it.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        let mut fields = Map::new();
        fields.insert("schema".into(), Value::from(1));
        fields.insert("command".into(), Value::from(command));
        fields.insert("seed".into(), Value::from(seed));
        Report { fields }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.into(), value.into());
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&Value::Object(self.fields.clone())).expect("json");
                s.push('\n');
                s
            }
            OutputFormat::Table => {
                let mut out = String::new();
                let cmd = self.fields["command"].as_str().unwrap_or_default();
                out.push_str(&format!("# lieshadow {cmd} (seed {})\n", self.fields["seed"]));
                for (k, v) in &self.fields {
                    if k == "command" || k == "seed" || k == "schema" {
                        continue;
                    }
                    render_entry(&mut out, k, v, 0);
                }
                out
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Array(items) if items.iter().all(scalar_leaf) => {
            Some(items.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn scalar_leaf(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn render_entry(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render_entry(out, k, x, depth + 1);
            }
        }
        Value::Array(items) => {
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}  - {s}\n")),
                    None => match x {
                        Value::Object(m) => {
                            out.push_str(&format!("{pad}  -\n"));
                            for (k, y) in m {
                                render_entry(out, k, y, depth + 2);
                            }
                        }
                        _ => render_entry(out, "-", x, depth + 1),
                    },
                }
            }
        }
        _ => unreachable!(),
    }
}
