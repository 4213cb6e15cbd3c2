//! Plain-text rendering of JSON reports.
//!
//! Every scalar is printed exactly as it appears in the JSON form, so the two
//! formats carry the same values.

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Arrays of scalars (or of arrays of scalars) fit on one line.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Object(map) if map.is_empty() => Some("{}".into()),
        Value::Object(_) => None,
        Value::Array(items) => {
            let parts = items.iter().map(inline).collect::<Option<Vec<_>>>()?;
            Some(format!("[{}]", parts.join(", ")))
        }
        other => Some(scalar(other)),
    }
}

fn write(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(line) = inline(v) {
        out.push_str(&format!("{pad}{key}: {line}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                write(out, k, x, depth + 1);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                write(out, &format!("[{i}]"), x, depth + 1);
            }
        }
        _ => unreachable!("scalars render inline"),
    }
}

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = report {
        for key in ["command", "input_digest", "result", "checks", "warnings"] {
            if let Some(v) = map.get(key) {
                write(&mut out, key, v, 0);
            }
        }
    }
    out
}
