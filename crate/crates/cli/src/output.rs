use alphapf::skewmat::{parse_complex, Scalar};
use alphapf::Error;
use serde_json::{Map, Value};

use crate::CliError;

pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S, CliError> {
    let (re, im) = parse_complex(text).ok_or_else(|| Error::Parse(format!("{text:?} is not a number of the form a, a+bi or a-bi")))?;
    Ok(S::from_rational_parts(&re, &im))
}

pub fn parse_list<S: Scalar>(text: &str) -> Result<Vec<S>, CliError> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(parse_scalar).collect()
}

pub fn parse_usize_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("{s:?} is not a non-negative integer")).into()))
        .collect()
}

/// `[re, im]`.
pub fn complex<S: Scalar>(x: &S) -> Value {
    let z = x.to_c64();
    Value::from(vec![z.re, z.im])
}

/// Inserts `key: [re, im]`, plus `key_exact: "p/q+r/si"` in exact mode.
pub fn put<S: Scalar>(obj: &mut Map<String, Value>, key: &str, x: &S) {
    obj.insert(key.to_string(), complex(x));
    if S::EXACT {
        obj.insert(format!("{key}_exact"), Value::from(x.display()));
    }
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Flat `key = value` lines for the text format.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    flatten("", v, &mut out);
    out
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.len() == 2 && items.iter().all(Value::is_f64) => {
            let (re, im) = (items[0].as_f64().unwrap_or(0.0), items[1].as_f64().unwrap_or(0.0));
            let z = if im == 0.0 {
                format!("{re}")
            } else if im < 0.0 {
                format!("{re}-{}i", -im)
            } else {
                format!("{re}+{im}i")
            };
            out.push_str(&format!("{prefix} = {z}\n"));
        }
        other => out.push_str(&format!("{prefix} = {other}\n")),
    }
}
