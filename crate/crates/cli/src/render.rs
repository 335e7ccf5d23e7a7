//! Report output. Tables are rendered from the same JSON value that `--json`
//! prints, so both formats carry identical data.

use serde::Serialize;
use serde_json::Value;

pub fn json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

pub fn table<T: Serialize>(report: &T) -> String {
    let v = serde_json::to_value(report).expect("reports serialize");
    let mut out = String::new();
    walk(&mut out, "", &v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        _ => None,
    }
}

fn walk(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key:<24} {s}\n"));
        return;
    }
    match v {
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
            let cells: Vec<String> = items.iter().filter_map(scalar).collect();
            out.push_str(format!("{pad}{key:<24} [{}] {}", cells.len(), cells.join("  ")).trim_end());
            out.push('\n');
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key} [{}]\n", items.len()));
            for (i, x) in items.iter().enumerate() {
                walk(out, &format!("#{i}"), x, depth + 1);
            }
        }
        Value::Object(map) => {
            if !key.is_empty() {
                out.push_str(&format!("{pad}{key}\n"));
            }
            let d = if key.is_empty() { depth } else { depth + 1 };
            for (k, x) in map {
                walk(out, k, x, d);
            }
        }
        _ => unreachable!(),
    }
}
