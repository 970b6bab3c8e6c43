//! One report model, two renderings.
//!
//! Commands build a [`serde_json::Value`]; [`render_json`] and [`render_text`]
//! only format it. Object keys are sorted (the default `serde_json` map is
//! ordered) and floats are rounded to 12 significant digits by [`num`].

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// `x` rounded to 12 significant digits; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    if x == 0.0 {
        return json!(0.0);
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    json!(rounded)
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Strings containing whitespace are lines, not atoms.
fn inline_atom(v: &Value) -> bool {
    match v {
        Value::String(s) => !s.chars().any(char::is_whitespace),
        Value::Array(_) | Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| inline_atom(i) || i.as_array().is_some_and(|a| a.iter().all(inline_atom))) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn inline_object(m: &Map<String, Value>) -> Option<String> {
    let parts: Option<Vec<String>> = m.iter().map(|(k, v)| scalar(v).map(|s| format!("{k}={s}"))).collect();
    parts.map(|p| p.join(" "))
}

fn text_into(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                match scalar(val) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        text_into(out, val, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::String(s) => {
                        let _ = writeln!(out, "{pad}{s}");
                    }
                    Value::Object(m) => match inline_object(m) {
                        Some(line) => {
                            let _ = writeln!(out, "{pad}- {line}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}-");
                            text_into(out, item, indent + 1);
                        }
                    },
                    other => match scalar(other) {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}- {s}");
                        }
                        None => text_into(out, other, indent + 1),
                    },
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

/// Indented `key: value` text; arrays of strings with spaces print one per line.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    text_into(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_twelve_digits() {
        assert_eq!(num(0.1 + 0.2).to_string(), "0.3");
        assert_eq!(num(1.0 / 3.0).to_string(), "0.333333333333");
        assert_eq!(num(-2.5e-17).to_string(), "-2.5e-17");
        assert_eq!(num(f64::INFINITY), json!("inf"));
    }

    #[test]
    fn keys_are_sorted() {
        let v = json!({"b": 1, "a": {"d": [1, 2], "c": true}});
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"a":{"c":true,"d":[1,2]},"b":1}"#);
    }

    #[test]
    fn text_layout() {
        let v = json!({
            "count": 2,
            "lines": ["0: 0/1", "1: 1/2"],
            "rows": [{"k": 1, "v": "x"}],
            "edges": [[0, 1], [1, 2]],
            "members": ["a", "b"],
        });
        assert_eq!(
            render_text(&v),
            "count: 2\nedges: [[0, 1], [1, 2]]\nlines:\n  0: 0/1\n  1: 1/2\nmembers: [a, b]\nrows:\n  - k=1 v=x\n"
        );
    }
}
