//! Canonical JSON encodings.
//!
//! Integers up to 2^53 − 1 in magnitude are JSON numbers; larger ones are
//! `{"bigint": "<decimal>"}`. Non-integral rationals are `"p/q"` strings.

use mixmult::multiplicity::MultiplicityReport;
use mixmult::{Field, Rational};
use num_bigint::BigInt;
use serde_json::{json, Value};

const MAX_SAFE: u64 = (1 << 53) - 1;

pub fn uint(v: u128) -> Value {
    if v <= MAX_SAFE as u128 {
        json!(v as u64)
    } else {
        json!({ "bigint": v.to_string() })
    }
}

pub fn int(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(i) if i.unsigned_abs() <= MAX_SAFE => json!(i),
        _ => json!({ "bigint": v.to_string() }),
    }
}

pub fn rational(q: &Rational) -> Value {
    match q.as_integer() {
        Some(i) => int(&i),
        None => json!(q.to_string()),
    }
}

pub fn uints<T: Copy + Into<u128>>(values: &[T]) -> Value {
    Value::Array(values.iter().map(|&v| uint(v.into())).collect())
}

/// Value plus the sample grid that reproduces it.
pub fn multiplicity(r: &MultiplicityReport) -> Value {
    let samples: Vec<Value> = r
        .samples
        .iter()
        .map(|s| json!({ "t": uints(&s.t), "colength": uint(s.colength as u128) }))
        .collect();
    json!({
        "value": uint(r.value as u128),
        "dimension": r.dimension,
        "orders": uints(&r.orders),
        "base": uints(&r.base),
        "backend": r.backend.name(),
        "samples": samples,
    })
}
