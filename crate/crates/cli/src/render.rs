use serde_json::{json, Value};

use engelkit::{Field, Subspace};

/// `{"dim": d, "basis": rows}` with rows in reduced echelon form.
pub fn subspace_json<F: Field>(s: &Subspace<F>) -> Value {
    json!({"dim": s.dim(), "basis": s.to_repr()})
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Array(cs) => format!("({})", cs.iter().map(scalar).collect::<Vec<_>>().join(",")),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn is_basis(v: &Value) -> bool {
    v.as_array().is_some_and(|rows| {
        rows.iter().all(|r| {
            r.as_array()
                .is_some_and(|r| r.iter().all(|x| !x.is_object()))
        })
    })
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(x, indent + 1, out);
                    }
                    Value::Array(items)
                        if k == "basis" || is_basis(x) && !items.is_empty() && k != "reports" =>
                    {
                        let rows: Vec<String> = items
                            .iter()
                            .map(|r| {
                                format!(
                                    "[{}]",
                                    r.as_array()
                                        .map(|r| r.iter().map(scalar).collect::<Vec<_>>().join(" "))
                                        .unwrap_or_default()
                                )
                            })
                            .collect();
                        out.push_str(&format!(
                            "{pad}{k}: {}\n",
                            if rows.is_empty() {
                                "[]".into()
                            } else {
                                rows.join(" ")
                            }
                        ));
                    }
                    Value::Array(items)
                        if items.iter().all(|x| !x.is_object() && !x.is_array()) =>
                    {
                        out.push_str(&format!(
                            "{pad}{k}: [{}]\n",
                            items.iter().map(scalar).collect::<Vec<_>>().join(" ")
                        ));
                    }
                    Value::Array(items) => {
                        out.push_str(&format!("{pad}{k}: ({} entries)\n", items.len()));
                        for (i, item) in items.iter().enumerate() {
                            if item.is_object() {
                                out.push_str(&format!("{pad}  - #{i}\n"));
                                walk(item, indent + 2, out);
                            } else {
                                out.push_str(&format!("{pad}  - {}\n", scalar(item)));
                            }
                        }
                    }
                    other => out.push_str(&format!("{pad}{k}: {}\n", scalar(other))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

/// Indented plain-text view of a JSON report.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    walk(v, 0, &mut out);
    out.trim_end().to_string()
}
