//! Wire formats: complex numbers as `[re, im]` (bare reals allowed on input),
//! JSON input payloads, and the text rendering of reports.

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::poly::ComplexScalar;

/// Version tag carried by every emitted object.
pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum WireComplex {
    Real(f64),
    Pair([f64; 2]),
}

impl WireComplex {
    pub fn to_complex(self) -> ComplexScalar {
        match self {
            WireComplex::Real(re) => ComplexScalar::new(re, 0.0),
            WireComplex::Pair([re, im]) => ComplexScalar::new(re, im),
        }
    }
}

/// Fields a JSON input line may carry. Unknown fields are ignored, so any
/// emitted report is itself a valid payload.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct Payload {
    pub model: Option<u8>,
    pub params: Option<Vec<WireComplex>>,
    pub coefficients: Option<Vec<WireComplex>>,
    pub free: Option<WireComplex>,
    pub tolerance: Option<f64>,
}

impl Payload {
    pub fn parse(line: &str) -> Result<Self, String> {
        serde_json::from_str(line).map_err(|e| format!("invalid JSON payload: {e}"))
    }
}

pub fn complex_to_json(z: ComplexScalar) -> Value {
    json!([z.re, z.im])
}

pub fn complex_list_to_json(zs: &[ComplexScalar]) -> Value {
    Value::Array(zs.iter().map(|&z| complex_to_json(z)).collect())
}

/// Parses a command-line complex token: `x`, `re,im` or `[re,im]`.
pub fn parse_complex(token: &str) -> Result<ComplexScalar, String> {
    let t = token.trim();
    let z = if t.starts_with('[') {
        match serde_json::from_str::<WireComplex>(t) {
            Ok(w) => w.to_complex(),
            Err(_) => return Err(format!("cannot parse complex value {token:?}")),
        }
    } else if let Some((re, im)) = t.split_once(',') {
        ComplexScalar::new(parse_real(re, token)?, parse_real(im, token)?)
    } else {
        ComplexScalar::new(parse_real(t, token)?, 0.0)
    };
    if z.is_finite() {
        Ok(z)
    } else {
        Err(format!("non-finite complex value {token:?}"))
    }
}

fn parse_real(s: &str, token: &str) -> Result<f64, String> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| format!("cannot parse complex value {token:?}"))
}

pub fn parse_complex_list(tokens: &[String]) -> Result<Vec<ComplexScalar>, String> {
    tokens.iter().map(|t| parse_complex(t)).collect()
}

pub fn from_wire_list(values: &[WireComplex], what: &str) -> Result<Vec<ComplexScalar>, String> {
    let zs: Vec<_> = values.iter().map(|w| w.to_complex()).collect();
    if zs.iter().all(|z| z.is_finite()) {
        Ok(zs)
    } else {
        Err(format!("non-finite value in {what}"))
    }
}

/// 15 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn format_complex(re: f64, im: f64) -> String {
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{} {} {}i", format_real(re), sign, format_real(im.abs()))
}

fn as_complex_pair(v: &Value) -> Option<(f64, f64)> {
    match v.as_array()?.as_slice() {
        [re, im] if re.is_f64() && im.is_f64() => Some((re.as_f64()?, im.as_f64()?)),
        _ => None,
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    if let Some((re, im)) = as_complex_pair(v) {
        return Some(format_complex(re, im));
    }
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Number(n) if n.is_f64() => Some(format_real(n.as_f64().unwrap_or(f64::NAN))),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

/// Indented `key: value` rendering of a report object.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    match report {
        Value::Object(map) => render_object(map, 0, &mut out),
        other => render_value(other, 0, &mut out),
    }
    out
}

fn render_object(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (key, value) in map {
        match scalar_text(value) {
            Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{key}:\n"));
                render_value(value, indent + 2, out);
            }
        }
    }
}

fn render_value(value: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => render_object(map, indent, out),
        Value::Array(items) => {
            for item in items {
                match scalar_text(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_value(item, indent + 2, out);
                    }
                }
            }
        }
        other => {
            if let Some(s) = scalar_text(other) {
                out.push_str(&format!("{pad}{s}\n"));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_tokens() {
        assert_eq!(parse_complex("2.5").unwrap(), ComplexScalar::new(2.5, 0.0));
        assert_eq!(parse_complex("-1,3").unwrap(), ComplexScalar::new(-1.0, 3.0));
        assert_eq!(parse_complex("[0.5, -2]").unwrap(), ComplexScalar::new(0.5, -2.0));
        assert_eq!(parse_complex("[4]").ok(), None);
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("inf").is_err());
        assert!(parse_complex("1,NaN").is_err());
    }

    #[test]
    fn payload_accepts_bare_reals_and_pairs() {
        let p = Payload::parse(r#"{"coefficients": [1, [2, 3], -0.5, 0, 0, 0], "model": 2, "extra": "ignored"}"#)
            .unwrap();
        let cs = from_wire_list(&p.coefficients.unwrap(), "coefficients").unwrap();
        assert_eq!(cs[1], ComplexScalar::new(2.0, 3.0));
        assert_eq!(cs[2], ComplexScalar::new(-0.5, 0.0));
        assert_eq!(p.model, Some(2));
    }

    #[test]
    fn text_rendering() {
        let v = json!({"schema": 1, "verdict": "Both", "root": [1.0, -2.0], "list": [[0.0, 0.0]]});
        let text = render_text(&v);
        assert!(text.contains("schema: 1\n"));
        assert!(text.contains("verdict: Both\n"));
        assert!(text.contains("root: 1.00000000000000e0 - 2.00000000000000e0i\n"));
        assert!(text.contains("list:\n  - 0.00000000000000e0 + 0.00000000000000e0i\n"));
    }
}
