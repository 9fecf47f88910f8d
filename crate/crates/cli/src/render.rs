//! Plain-text rendering of command output.

use std::fmt::Write;

use serde_json::{Map, Value};

pub fn table(v: &Value) -> String {
    let mut out = String::new();
    block(&mut out, v, 0);
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_matrix(m: &Map<String, Value>) -> bool {
    m.contains_key("rows")
        && m.contains_key("cols")
        && m.get("entries").is_some_and(Value::is_array)
}

fn is_flat(v: &Value) -> bool {
    v.as_object()
        .is_some_and(|m| m.values().all(|x| !x.is_object() && !x.is_array()))
}

fn grid(out: &mut String, m: &Map<String, Value>, indent: usize) {
    let cols = m["cols"].as_u64().unwrap_or(0) as usize;
    let cells: Vec<String> = m["entries"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|e| e.to_string())
        .collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    if cells.is_empty() || cols == 0 {
        let _ = writeln!(
            out,
            "{:indent$}({}x{} over {})",
            "",
            m["rows"],
            m["cols"],
            scalar(&m["ring"])
        );
        return;
    }
    for row in cells.chunks(cols) {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{:indent$}[ {} ]", "", line.join(" "));
    }
}

fn rows(out: &mut String, items: &[Value], indent: usize) {
    let mut headers: Vec<&str> = Vec::new();
    for item in items {
        for k in item.as_object().into_iter().flat_map(Map::keys) {
            if !headers.contains(&k.as_str()) {
                headers.push(k);
            }
        }
    }
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|item| {
            headers
                .iter()
                .map(|h| item.get(*h).map_or_else(String::new, scalar))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..headers.len())
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].len())
                .chain([headers[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| -> String {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let _ = writeln!(out, "{:indent$}{}", "", line(headers.clone()));
    for r in &cells {
        let _ = writeln!(
            out,
            "{:indent$}{}",
            "",
            line(r.iter().map(String::as_str).collect())
        );
    }
}

fn block(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Object(m) if is_matrix(m) => grid(out, m, indent),
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{:indent$}{k}:", "");
                        block(out, x, indent + 2);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        let _ = writeln!(out, "{:indent$}{k}:", "");
                        block(out, x, indent + 2);
                    }
                    _ => {
                        let _ = writeln!(out, "{:indent$}{k}: {}", "", scalar(x));
                    }
                }
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(is_flat) => {
            rows(out, items, indent)
        }
        Value::Array(items) if items.iter().any(Value::is_object) => {
            for (i, item) in items.iter().enumerate() {
                let _ = writeln!(out, "{:indent$}[{i}]", "");
                block(out, item, indent + 2);
            }
        }
        other => {
            let _ = writeln!(out, "{:indent$}{}", "", scalar(other));
        }
    }
}
