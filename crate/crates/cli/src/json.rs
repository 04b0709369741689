//! Deterministic report encoding.
//!
//! Keys come out sorted (serde_json's default map), floats are rounded to 12
//! significant digits with ties to even, non-finite floats become the strings
//! `"inf"`, `"-inf"` and `"nan"`, and every object carries a `criterion`
//! inherited from its nearest ancestor.

use serde_json::{Number, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// A float rounded to [`SIGNIFICANT_DIGITS`], as a JSON value.
pub fn num(v: f64) -> Value {
    if v.is_nan() {
        return Value::String("nan".into());
    }
    if v.is_infinite() {
        return Value::String(if v > 0.0 { "inf" } else { "-inf" }.into());
    }
    // Exact-precision formatting rounds ties to even.
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v)
        .parse()
        .expect("formatted float parses");
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

/// Rounds every float and fills in missing `criterion` keys.
pub fn finish(mut v: Value, root_criterion: &str) -> Value {
    normalize(&mut v, root_criterion);
    v
}

fn normalize(v: &mut Value, inherited: &str) {
    match v {
        Value::Number(n) if n.is_f64() => *v = num(n.as_f64().expect("f64")),
        Value::Array(items) => items.iter_mut().for_each(|x| normalize(x, inherited)),
        Value::Object(map) => {
            let own = match map.get("criterion") {
                Some(Value::String(s)) => s.clone(),
                _ => inherited.to_owned(),
            };
            map.insert("criterion".into(), Value::String(own.clone()));
            for (k, x) in map.iter_mut() {
                if k != "criterion" {
                    normalize(x, &own);
                }
            }
        }
        _ => {}
    }
}

pub fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("serializable")
    } else {
        serde_json::to_string(v).expect("serializable")
    }
}
