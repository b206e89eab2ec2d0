//! Aligned plain-text rendering of a response.

use serde_json::Value;

use crate::run::{Response, Status};

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            a.iter().map(scalar).collect::<Vec<_>>().join(", ")
        }
        other => other.to_string(),
    }
}

fn table(rows: &[Vec<String>], out: &mut String, indent: &str) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{:<w$}", s, w = widths[c])).collect();
        out.push_str(indent);
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
}

fn block(key: &str, v: &Value, out: &mut String) {
    match v {
        Value::Array(items) if items.iter().all(Value::is_object) && !items.is_empty() => {
            out.push_str(key);
            out.push_str(":\n");
            let mut header: Vec<String> = Vec::new();
            for it in items {
                for k in it.as_object().expect("object").keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
            let mut rows = vec![header.clone()];
            rows.extend(items.iter().map(|it| header.iter().map(|k| scalar(&it[k.as_str()])).collect()));
            table(&rows, out, "  ");
        }
        Value::Array(items) if items.iter().all(Value::is_array) && !items.is_empty() => {
            out.push_str(key);
            out.push_str(":\n");
            let rows: Vec<Vec<String>> = items
                .iter()
                .map(|r| r.as_array().expect("array").iter().map(scalar).collect())
                .collect();
            table(&rows, out, "  ");
        }
        Value::Object(map) => {
            out.push_str(key);
            out.push_str(":\n");
            let rows: Vec<Vec<String>> = map.iter().map(|(k, v)| vec![format!("  {}", k), scalar(v)]).collect();
            table(&rows, out, "");
        }
        _ => unreachable!("scalars are rendered by the caller"),
    }
}

fn is_block(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(a) => !a.is_empty() && a.iter().all(|x| x.is_array() || x.is_object()),
        _ => false,
    }
}

pub fn pretty(r: &Response) -> String {
    let mut out = String::new();
    if r.status == Status::Error {
        if let Some(e) = &r.error {
            out.push_str(&format!("error [{}]: {}\n", e.code, e.message));
        }
    }
    if let Value::Object(map) = &r.payload {
        let rows: Vec<Vec<String>> = map
            .iter()
            .filter(|(_, v)| !is_block(v))
            .map(|(k, v)| vec![k.clone(), scalar(v)])
            .collect();
        table(&rows, &mut out, "");
        for (k, v) in map.iter().filter(|(_, v)| is_block(v)) {
            block(k, v, &mut out);
        }
    }
    for d in &r.diagnostics {
        out.push_str(&format!("note: {}\n", d));
    }
    out
}
