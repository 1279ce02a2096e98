//! CSV and JSON rendering of command results.

use clap::ValueEnum;
use minkpi::verification::CheckOutcome;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// What a command produced, before a format is applied.
#[derive(Clone, Debug, PartialEq)]
pub enum Rendered {
    /// Rows sharing one set of keys; CSV by default.
    Rows(Vec<Map<String, Value>>),
    /// A single object; JSON by default.
    Record(Map<String, Value>),
    /// A bare number by default; a one-cell table otherwise.
    Scalar(&'static str, f64),
    /// `PASS`/`FAIL` lines by default.
    Ledger {
        checks: Vec<CheckOutcome>,
        seed: u64,
    },
}

/// Rounds to 15 significant digits, the most a double carries faithfully.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// JSON number rounded to 15 significant digits; `null` when not finite.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(round15(x)).map_or(Value::Null, Value::Number)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Replaces every float in `v` by its 15-digit rounding.
pub fn round_all(v: Value) -> Value {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => n.as_f64().map_or(Value::Null, num),
        Value::Array(a) => Value::Array(a.into_iter().map(round_all).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_all(v))).collect()),
        other => other,
    }
}

impl Rendered {
    pub fn render(&self, format: Option<Format>) -> String {
        match (self, format) {
            (Rendered::Rows(rows), Some(Format::Json)) => json(&Value::Array(
                rows.iter().cloned().map(Value::Object).collect(),
            )),
            (Rendered::Rows(rows), _) => csv(rows),
            (Rendered::Record(rec), Some(Format::Csv)) => csv(std::slice::from_ref(rec)),
            (Rendered::Record(rec), _) => json(&Value::Object(rec.clone())),
            (Rendered::Scalar(_, x), None) => format!("{}\n", cell(&num(*x))),
            (Rendered::Scalar(name, x), Some(f)) => {
                let mut rec = Map::new();
                rec.insert((*name).into(), num(*x));
                Rendered::Record(rec).render(Some(f))
            }
            (Rendered::Ledger { checks, seed }, None) => {
                let mut out = String::new();
                for c in checks {
                    out.push_str(&format!("{c}\n"));
                }
                let failed = checks.iter().filter(|c| !c.passed).count();
                out.push_str(&format!(
                    "verify: {} passed, {failed} failed, seed {seed}\n",
                    checks.len() - failed
                ));
                out
            }
            (Rendered::Ledger { checks, .. }, Some(f)) => {
                let rows = checks
                    .iter()
                    .map(|c| match serde_json::to_value(c) {
                        Ok(Value::Object(o)) => o,
                        _ => unreachable!("CheckOutcome serializes to an object"),
                    })
                    .collect();
                Rendered::Rows(rows).render(Some(f))
            }
        }
    }
}

fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serializable");
    s.push('\n');
    s
}

/// Nested objects become dotted column names.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(o) if !o.is_empty() => {
            for (k, v) in o {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        _ => out.push((prefix.to_string(), cell(v))),
    }
}

/// Arrays are joined with `;` so they fit one CSV cell.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => i.to_string(),
            (_, Some(u)) => u.to_string(),
            _ => format!("{}", n.as_f64().unwrap_or(f64::NAN)),
        },
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(";"),
        Value::Object(_) => v.to_string(),
    }
}

/// The header is taken from the first row; later rows fill the same
/// columns, missing keys left empty. No rows, no output.
fn csv(rows: &[Map<String, Value>]) -> String {
    let flat: Vec<Vec<(String, String)>> = rows
        .iter()
        .map(|r| {
            let mut out = Vec::new();
            flatten("", &Value::Object(r.clone()), &mut out);
            out
        })
        .collect();
    let Some(first) = flat.first() else {
        return String::new();
    };
    let header: Vec<&str> = first.iter().map(|(k, _)| k.as_str()).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for row in &flat {
        let record = header.iter().map(|h| {
            row.iter()
                .find(|(k, _)| k == h)
                .map_or("", |(_, v)| v.as_str())
        });
        w.write_record(record).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("cells are UTF-8")
}
