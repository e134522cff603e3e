//! JSON encoding of reals where `∞` is written as the string `"inf"`.

use serde::Serializer;
use serde_json::Value;

pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(label(*x))
    }
}

pub fn to_value(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::from(label(x))
    }
}

fn label(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

pub mod option {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => super::serialize(v, s),
            None => s.serialize_none(),
        }
    }
}
