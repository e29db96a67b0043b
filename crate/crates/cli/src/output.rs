//! Fixed-precision number formatting for JSON and CSV output.

use std::str::FromStr;

use num_complex::Complex64;
use serde_json::{json, Number, Value};

/// 17 significant digits, exponent form.
pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

/// A JSON number carrying exactly the text of [`fmt`]; `null` if not finite.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&fmt(x)).expect("formatted float is valid JSON"))
}

pub fn cnum(z: Complex64) -> Value {
    json!({ "re": num(z.re), "im": num(z.im) })
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}
