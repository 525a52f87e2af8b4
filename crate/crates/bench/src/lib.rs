//! Shared fixtures for the criterion benches.

use winsor_core::{MomentSpec, Strike};

/// `(m, σ, c)` triples covering the low-strike branch, the threshold and the
/// high-strike branch.
pub const CASES: [(&str, f64, f64, f64); 3] = [
    ("low_strike", 1.0, 1.0, 0.5),
    ("threshold", 1.0, 1.0, 1.0),
    ("high_strike", 1.0, 1.0, 3.0),
];

pub fn case(m: f64, s: f64, c: f64) -> (MomentSpec, Strike) {
    (MomentSpec::new(m, s).unwrap(), Strike::new(c).unwrap())
}
