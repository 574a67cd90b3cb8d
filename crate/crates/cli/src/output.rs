//! JSON helpers and the plain-text rendering of reports.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{Number, Value};

/// An exact integer as a JSON number.
pub fn int(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal is a JSON number"))
}

pub fn ints(ns: &[BigInt]) -> Value {
    Value::Array(ns.iter().map(int).collect())
}

/// An integral rational as a number, otherwise a `"p/q"` string.
pub fn rational(q: &BigRational) -> Value {
    if q.is_integer() {
        int(&q.to_integer())
    } else {
        Value::String(q.to_string())
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").expect("write to string"),
                    None => {
                        writeln!(out, "{pad}{k}:").expect("write to string");
                        render_into(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").expect("write to string"),
                    None => {
                        writeln!(out, "{pad}- [{i}]").expect("write to string");
                        render_into(out, x, indent + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).expect("write to string"),
    }
}

/// Indented `key: value` text for a JSON report.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

pub fn render(v: &Value, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        render_text(v)
    }
}
