//! JSON encoders and plain-text tables shared by the report commands.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::invariants::{EuExpr, Outcome};

/// Integers that fit in i64 are JSON numbers, larger ones decimal strings.
pub(super) fn int(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(k) => Value::from(k),
        None => Value::String(v.to_string()),
    }
}

pub(super) fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub(super) fn vectors_json<'a>(vs: impl Iterator<Item = &'a Vec<BigInt>>) -> Value {
    Value::Array(vs.map(|v| vec_json(v)).collect())
}

pub(super) fn expr_json(e: &EuExpr) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|(s, c)| json!({"variety": s.variety, "face": s.face.to_string(), "coeff": int(c)}))
        .collect();
    json!({
        "text": e.to_string(),
        "constant": int(&e.constant),
        "terms": terms,
        "value": e.value().map(int).unwrap_or(Value::Null),
    })
}

pub(super) fn outcome_json(o: &Outcome) -> Value {
    match o {
        Outcome::Value(v) => json!({"m": int(v), "relation": Value::Null, "text": o.to_string()}),
        Outcome::Relation(r) => json!({
            "m": Value::Null,
            "relation": {"lhs": expr_json(&r.lhs), "m_coefficient": r.m_coefficient},
            "text": o.to_string(),
        }),
    }
}

/// Left-aligned columns separated by two spaces, with a rule under the header.
pub(super) fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let n = headers.len();
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            s.push_str(c);
            if i + 1 < n {
                s.extend(std::iter::repeat_n(' ', width[i] - c.chars().count() + 2));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(headers.to_vec());
    out.push('\n');
    out.push_str(&line(width.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    out.push('\n');
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}
