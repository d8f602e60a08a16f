//! Rendering of results: deterministic JSON with `%.12g` floats, and an
//! indented plain-text view for `--format pretty`.

use std::fmt::Write;

use g2flag::flow::integrate::fmt_g12;
use serde_json::Value;

fn number(n: &serde_json::Number) -> String {
    if n.is_f64() {
        let v = n.as_f64().expect("f64 number");
        if v.is_finite() {
            fmt_g12(v)
        } else {
            "null".into()
        }
    } else {
        n.to_string()
    }
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(number(n)),
        Value::String(s) => Some(quoted(s)),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

/// Arrays of scalars stay on one line.
fn is_flat(a: &[Value]) -> bool {
    a.iter().all(|v| !matches!(v, Value::Array(_) | Value::Object(_)))
}

fn write_json(out: &mut String, v: &Value, depth: usize) {
    if let Some(s) = scalar(v) {
        out.push_str(&s);
        return;
    }
    let pad = "  ".repeat(depth + 1);
    match v {
        Value::Array(a) if is_flat(a) => {
            let items: Vec<String> = a.iter().map(|x| scalar(x).expect("scalar")).collect();
            write!(out, "[{}]", items.join(", ")).unwrap();
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_json(out, x, depth + 1);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            write!(out, "{}]", "  ".repeat(depth)).unwrap();
        }
        Value::Object(o) => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                write!(out, "{pad}{}: ", quoted(k)).unwrap();
                write_json(out, x, depth + 1);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            write!(out, "{}}}", "  ".repeat(depth)).unwrap();
        }
        _ => unreachable!("scalars handled above"),
    }
}

/// Indented JSON; object keys are sorted, floats use `%.12g`.
pub fn to_json(v: &Value) -> String {
    let mut s = String::new();
    write_json(&mut s, v, 0);
    s.push('\n');
    s
}

pub struct Style {
    color: bool,
}

impl Style {
    /// Colors are on unless `NO_COLOR` is set to a nonempty value.
    pub fn from_env() -> Self {
        let color = std::env::var_os("NO_COLOR").map_or(true, |v| v.is_empty());
        Style { color }
    }

    fn paint(&self, code: &str, s: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }

    fn key(&self, s: &str) -> String {
        self.paint("1", s)
    }

    fn value(&self, v: &Value) -> String {
        match v {
            Value::Bool(true) => self.paint("32", "true"),
            Value::Bool(false) => self.paint("31", "false"),
            Value::String(s) => s.clone(),
            Value::Array(a) if is_flat(a) => {
                let items: Vec<String> = a.iter().map(|x| self.value(x)).collect();
                format!("[{}]", items.join(", "))
            }
            other => scalar(other).unwrap_or_default(),
        }
    }
}

/// Exact scalars (`{exact, value}` objects) print as their exact text.
fn exact_text(v: &Value) -> Option<&str> {
    let o = v.as_object()?;
    if o.len() == 2 && o.contains_key("value") {
        o.get("exact")?.as_str()
    } else {
        None
    }
}

fn write_pretty(out: &mut String, style: &Style, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                if let Some(t) = exact_text(x) {
                    writeln!(out, "{pad}{}: {t}", style.key(k)).unwrap();
                } else if scalar(x).is_some() || matches!(x, Value::Array(a) if is_flat(a)) {
                    writeln!(out, "{pad}{}: {}", style.key(k), style.value(x)).unwrap();
                } else {
                    writeln!(out, "{pad}{}:", style.key(k)).unwrap();
                    write_pretty(out, style, x, indent + 1);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if let Some(t) = exact_text(x) {
                    writeln!(out, "{pad}- {t}").unwrap();
                } else if matches!(x, Value::Object(_) | Value::Array(_)) && scalar(x).is_none() {
                    writeln!(out, "{pad}-").unwrap();
                    write_pretty(out, style, x, indent + 1);
                } else {
                    writeln!(out, "{pad}- {}", style.value(x)).unwrap();
                }
            }
        }
        other => writeln!(out, "{pad}{}", style.value(other)).unwrap(),
    }
}

pub fn to_pretty(v: &Value, style: &Style) -> String {
    let mut s = String::new();
    write_pretty(&mut s, style, v, 0);
    s
}

/// One CSV field, quoted when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_use_twelve_significant_digits() {
        let v = json!({"b": [1.0, 0.1, 1.0 / 3.0], "a": 2, "c": "x"});
        assert_eq!(
            to_json(&v),
            "{\n  \"a\": 2,\n  \"b\": [1, 0.1, 0.333333333333],\n  \"c\": \"x\"\n}\n"
        );
    }

    #[test]
    fn output_is_valid_json() {
        let v = json!({"n": [{"x": 1e-20, "y": null}], "e": [], "o": {}});
        let back: Value = serde_json::from_str(&to_json(&v)).unwrap();
        assert_eq!(back["n"][0]["x"].as_f64(), Some(1e-20));
    }

    #[test]
    fn pretty_without_color() {
        let style = Style { color: false };
        let v = json!({"ok": true, "q": {"exact": "1/2", "value": 0.5}});
        assert_eq!(to_pretty(&v, &style), "ok: true\nq: 1/2\n");
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("ab"), "ab");
    }
}
