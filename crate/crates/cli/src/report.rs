//! JSON report envelope and the `--pretty` renderer.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Where a numeric payload value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Computed,
    PaperConstant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub schema_version: u32,
    pub subcommand: String,
    pub payload: Value,
    /// Origin of every numeric leaf of `payload`, keyed by its path.
    pub provenance: Map<String, Value>,
}

impl JsonReport {
    pub fn new(subcommand: &str, payload: Value) -> Self {
        let mut provenance = Map::new();
        label_numbers(&payload, String::new(), false, &mut provenance);
        JsonReport { schema_version: SCHEMA_VERSION, subcommand: subcommand.to_string(), payload, provenance }
    }
}

/// Objects tagged `"source": "paper"` hold published constants; every other
/// number is computed.
fn label_numbers(v: &Value, path: String, paper: bool, out: &mut Map<String, Value>) {
    match v {
        Value::Number(_) => {
            let origin = if paper { Origin::PaperConstant } else { Origin::Computed };
            out.insert(path, serde_json::to_value(origin).expect("enum serializes"));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                label_numbers(item, format!("{path}[{i}]"), paper, out);
            }
        }
        Value::Object(map) => {
            let paper = paper || map.get("source").and_then(Value::as_str) == Some("paper");
            for (k, item) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                label_numbers(item, p, paper, out);
            }
        }
        _ => {}
    }
}

/// Indented `key: value` listing; arrays of flat objects become tables.
pub fn render_pretty(report: &JsonReport) -> String {
    let mut s = format!("{} (schema {})\n", report.subcommand, report.schema_version);
    render_value(&report.payload, 1, &mut s);
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(t) => Some(t.clone()),
        _ => None,
    }
}

fn render_value(v: &Value, depth: usize, s: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(text) if !text.contains('\n') => s.push_str(&format!("{pad}{k}: {text}\n")),
                    Some(text) => {
                        s.push_str(&format!("{pad}{k}:\n"));
                        for line in text.lines() {
                            s.push_str(&format!("{pad}  {line}\n"));
                        }
                    }
                    None => {
                        s.push_str(&format!("{pad}{k}:\n"));
                        render_value(item, depth + 1, s);
                    }
                }
            }
        }
        Value::Array(items) => {
            if let Some(table) = flat_table(items) {
                for line in table {
                    s.push_str(&format!("{pad}{line}\n"));
                }
                return;
            }
            for item in items {
                match scalar(item) {
                    Some(text) => s.push_str(&format!("{pad}- {text}\n")),
                    None => {
                        s.push_str(&format!("{pad}-\n"));
                        render_value(item, depth + 1, s);
                    }
                }
            }
        }
        other => s.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Column-aligned rows when every item is an object of scalars with the same keys.
fn flat_table(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    let keys: Vec<&String> = first.keys().collect();
    let mut rows: Vec<Vec<String>> = vec![keys.iter().map(|k| k.to_string()).collect()];
    for item in items {
        let obj = item.as_object()?;
        if obj.len() != keys.len() {
            return None;
        }
        let row: Option<Vec<String>> = keys.iter().map(|k| obj.get(*k).and_then(scalar)).collect();
        rows.push(row?);
    }
    let widths: Vec<usize> =
        (0..keys.len()).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
    Some(
        rows.iter()
            .map(|r| {
                r.iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn numbers_are_labelled_by_source() {
        let r = JsonReport::new(
            "x",
            json!({"total": 3, "rows": [{"source": "paper", "gates": 32}, {"source": "computed", "gates": 4}]}),
        );
        assert_eq!(r.provenance["total"], json!("computed"));
        assert_eq!(r.provenance["rows[0].gates"], json!("paper-constant"));
        assert_eq!(r.provenance["rows[1].gates"], json!("computed"));
        assert_eq!(r.provenance.len(), 3);
    }

    #[test]
    fn tables_align_columns() {
        let lines = flat_table(&[json!({"a": 1, "bb": "x"}), json!({"a": 22, "bb": "yy"})]).unwrap();
        assert_eq!(lines, vec!["a   bb", "1   x", "22  yy"]);
    }
}
