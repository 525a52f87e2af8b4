//! Number formatting shared by the JSON and CSV writers.

use serde_json::{Map, Value};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to 12 significant digits. Printing the result with Rust's shortest
/// round-trip formatting then shows at most those 12 digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

pub fn num(x: f64) -> Value {
    Value::from(round_sig(x))
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn csv_num(x: f64) -> String {
    format!("{}", round_sig(x))
}

pub fn csv_opt(x: Option<f64>) -> String {
    x.map(csv_num).unwrap_or_default()
}

pub fn to_json(obj: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// Header row plus one data row, for flat single-object documents.
pub fn flat_csv(obj: &Map<String, Value>) -> String {
    let header: Vec<&str> = obj.keys().map(String::as_str).collect();
    let row: Vec<String> = obj
        .values()
        .map(|v| match v {
            Value::Null => String::new(),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(csv_num(0.5), "0.5");
        assert_eq!(csv_num(2.0 - 0.5 * 5f64.sqrt()), "0.88196601125");
        assert_eq!(csv_num(1.0 / 3.0), "0.333333333333");
        assert_eq!(csv_num(-0.2), "-0.2");
        assert_eq!(csv_num(0.0), "0");
        assert_eq!(round_sig(123_456_789.012_345_67), 123_456_789.012);
    }
}
