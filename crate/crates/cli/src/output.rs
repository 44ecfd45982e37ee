//! Output documents: the JSON envelope and its CSV flattening.

use serde_json::{json, Map, Value};

use gup_core::GupError;

use crate::config::{Format, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

pub fn success(command: &str, args: &[String], config: &RunConfig, result: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "args": args,
        "config": config,
        "result": result,
    })
}

pub fn failure(command: &str, args: &[String], err: &GupError) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "args": args,
        "error": { "kind": err.kind(), "message": err.to_string() },
    })
}

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("values serialize"),
        Format::Csv => to_csv(doc),
    }
}

fn field(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, Value)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        other => out.push((prefix.to_string(), other.clone())),
    }
}

/// A result holding a `rows` array of objects becomes a table; anything
/// else becomes `key,value` lines with dotted paths. Errors flatten the same
/// way.
fn to_csv(doc: &Value) -> String {
    let body = doc.get("result").or_else(|| doc.get("error")).cloned().unwrap_or(Value::Null);
    let mut lines = Vec::new();
    if let Some(rows) = body.get("rows").and_then(Value::as_array) {
        let empty = Map::new();
        let first = rows.first().and_then(Value::as_object).unwrap_or(&empty);
        let header: Vec<&String> = first.keys().collect();
        lines.push(header.iter().map(|h| field(&Value::String((*h).clone()))).collect::<Vec<_>>().join(","));
        for r in rows {
            lines.push(header.iter().map(|h| field(r.get(h.as_str()).unwrap_or(&Value::Null))).collect::<Vec<_>>().join(","));
        }
    } else {
        let mut flat = Vec::new();
        flatten("", &body, &mut flat);
        lines.push("key,value".to_string());
        lines.extend(flat.iter().map(|(k, v)| format!("{},{}", field(&Value::String(k.clone())), field(v))));
    }
    lines.join("\n")
}
