//! Machine-readable output: canonical JSON and CSV.

use serde::Serialize;
use serde_json::{Map, Value};
use std::io::{self, Write};

/// Significant digits kept in machine outputs.
pub const SIGNIFICANT_DIGITS: usize = 10;

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal text of `x` after rounding; empty for non-finite values.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return String::new();
    }
    let r = round_significant(x);
    if r == r.trunc() && r.abs() < 1e15 {
        format!("{r:.1}")
    } else {
        format!("{r}")
    }
}

/// Rounds every float in `value`; object keys are already sorted.
pub fn canonicalize(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round_significant(x))
                .map(Value::Number)
                .unwrap_or(Value::Null)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, canonicalize(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

/// Writes `value` as canonical pretty-printed JSON followed by a newline.
pub fn write_json(out: &mut dyn Write, value: Value) -> io::Result<()> {
    let text = serde_json::to_string_pretty(&canonicalize(value)).map_err(io::Error::other)?;
    writeln!(out, "{text}")
}

/// CSV writer with LF line endings.
pub fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}
