//! Text rendering of JSON reports.

use serde_json::Value;

fn superscript(n: u64) -> String {
    n.to_string().chars().map(|c| "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().nth(c.to_digit(10).unwrap_or(0) as usize).unwrap_or(c)).collect()
}

/// `ℤ² ⊕ ℤ/2` for `{rank: 2, invariant_factors: [2]}`; `None` for other values.
pub fn group_text(v: &Value) -> Option<String> {
    let obj = v.as_object()?;
    if obj.len() != 2 {
        return None;
    }
    let rank = obj.get("rank")?.as_u64()?;
    let factors = obj.get("invariant_factors")?.as_array()?;
    let mut parts: Vec<String> = factors.iter().map(|d| format!("ℤ/{d}")).collect();
    match rank {
        0 => {}
        1 => parts.insert(0, "ℤ".into()),
        r => parts.insert(0, format!("ℤ{}", superscript(r))),
    }
    Some(if parts.is_empty() { "0".into() } else { parts.join(" ⊕ ") })
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => a.iter().all(Value::is_number),
        _ => true,
    }
}

fn inline(v: &Value) -> Option<String> {
    if let Some(g) = group_text(v) {
        return Some(g);
    }
    match v {
        Value::Array(items) if items.iter().all(is_flat) => Some(serde_json::to_string(v).expect("serializable")),
        Value::Object(_) | Value::Array(_) => None,
        Value::String(s) => Some(s.clone()),
        other => Some(other.to_string()),
    }
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_into(item, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

pub fn render_text(v: &Value) -> String {
    if let Some(s) = inline(v) {
        return format!("{s}\n");
    }
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}
