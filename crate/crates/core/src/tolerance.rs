//! Comparison tolerances shared by the library checks and the test suites.

/// Closed form against closed form.
pub const CLOSED_FORM_REL: f64 = 1e-12;

/// Anything that sums over a distribution's atoms.
pub const SUMMATION_ABS: f64 = 1e-9;

/// Vertex probabilities in `[-PROB_CLAMP, PROB_CLAMP]` are rounded to zero;
/// below that the vertex is rejected.
pub const PROB_CLAMP: f64 = 1e-12;

/// Candidate support systems with a 1-norm condition estimate above this are
/// skipped.
pub const MAX_CONDITION: f64 = 1e12;

/// `|a - b| <= rel * max(|a|, |b|, scale)`.
///
/// `scale` is the magnitude of the problem the values come from (typically
/// `max(|m|, σ, |c|)`), so quantities that cancel to near zero are not held to
/// a relative tolerance of their own tiny size.
pub fn close_rel(a: f64, b: f64, rel: f64, scale: f64) -> bool {
    let mag = a.abs().max(b.abs()).max(scale.abs());
    (a - b).abs() <= rel * mag
}

pub fn close_abs(a: f64, b: f64, abs: f64) -> bool {
    (a - b).abs() <= abs
}
