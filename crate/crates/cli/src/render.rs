//! Plain-text rendering of a report: one `path: value` line per leaf,
//! with lists of scalars kept on one line.

use serde_json::Value;

pub fn table(report: &Value) -> String {
    let mut out = String::new();
    walk(report, "", &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Object(_) => None,
        Value::Array(xs) => {
            let parts: Option<Vec<String>> = xs.iter().map(|x| if x.is_array() || x.is_object() { None } else { scalar(x) }).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        other => Some(other.to_string()),
    }
}

fn walk(v: &Value, path: &str, out: &mut String) {
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{path:<40} {s}\n"));
        return;
    }
    let join = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                walk(x, &join(k), out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                walk(x, &format!("{path}[{i}]"), out);
            }
        }
        _ => unreachable!(),
    }
}
