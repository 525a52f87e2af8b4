//! Call-payoff bounds given the tail probability `p₀ = P(X > c)`, and the
//! Chebyshev-type tail inequalities that follow from them.

use serde::{Deserialize, Serialize};

use super::moments::{MomentSpec, Strike};
use crate::error::{BoundsError, Result};

/// `(m − c)p₀ ≤ E(X − c)⁺ ≤ (m − c)p₀ + σ√(p₀ − p₀²)` for every `X` with
/// mean `m`, standard deviation `σ` and `P(X > c) = p₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DlpBounds {
    pub lower: f64,
    pub upper: f64,
    pub tail_prob: f64,
}

impl DlpBounds {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

pub fn dlp_bounds(spec: MomentSpec, c: Strike, p0: f64) -> Result<DlpBounds> {
    if !(0.0..=1.0).contains(&p0) {
        return Err(BoundsError::out_of_range("p0", p0, "must lie in [0, 1]"));
    }
    let lower = (spec.mean() - c.value()) * p0;
    let upper = lower + spec.std_dev() * (p0 - p0 * p0).sqrt();
    Ok(DlpBounds {
        lower,
        upper,
        tail_prob: p0,
    })
}

/// Bounds on `P(X ≤ c)` for a standardized `X` (mean 0, variance 1).
///
/// For `c ≥ 0` the lower bound also holds for `P(X < c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBounds {
    pub lower: f64,
    pub upper: f64,
}

pub fn one_sided_tail_bounds(c: f64) -> TailBounds {
    let c2 = c * c;
    if c >= 0.0 {
        TailBounds {
            lower: c2 / (1.0 + c2),
            upper: 1.0,
        }
    } else {
        TailBounds {
            lower: 0.0,
            upper: 1.0 / (1.0 + c2),
        }
    }
}

/// Upper bound `2/(1+c²)` on `P(|X| > c)` for standardized `X`.
///
/// Exceeds 1 for `c < 1`; the raw value is returned uncapped.
pub fn two_sided_tail_bound(c: f64) -> Result<f64> {
    if !(c.is_finite() && c > 0.0) {
        return Err(BoundsError::out_of_range(
            "c",
            c,
            "must be positive and finite",
        ));
    }
    Ok(2.0 / (1.0 + c * c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: f64, s: f64) -> MomentSpec {
        MomentSpec::new(m, s).unwrap()
    }

    fn strike(c: f64) -> Strike {
        Strike::new(c).unwrap()
    }

    #[test]
    fn dlp_examples() {
        let b = dlp_bounds(spec(0.0, 1.0), strike(0.0), 0.5).unwrap();
        assert_eq!((b.lower, b.upper), (0.0, 0.5));

        let b = dlp_bounds(spec(3.0, 2.0), strike(1.0), 0.0).unwrap();
        assert_eq!((b.lower, b.upper), (0.0, 0.0));

        let b = dlp_bounds(spec(1.0, 2.0), strike(2.0), 0.25).unwrap();
        assert_eq!(b.lower, -0.25);
        // −0.25 + 2·√0.1875
        assert!((b.upper - 0.616_025_403_784_438_6).abs() < 1e-15);
    }

    #[test]
    fn dlp_rejects_bad_tail_prob() {
        for p0 in [-0.01, 1.01, f64::NAN] {
            assert!(dlp_bounds(spec(0.0, 1.0), strike(0.0), p0).is_err());
        }
    }

    #[test]
    fn dlp_width_peaks_at_half() {
        let s = spec(0.3, 1.7);
        let c = strike(0.9);
        let at_half = dlp_bounds(s, c, 0.5).unwrap().width();
        for i in 0..=100 {
            let p0 = i as f64 / 100.0;
            let b = dlp_bounds(s, c, p0).unwrap();
            assert!((b.width() - 1.7 * (p0 - p0 * p0).sqrt()).abs() <= 1e-12);
            assert!(b.width() <= at_half);
        }
    }

    #[test]
    fn one_sided_examples() {
        assert_eq!(one_sided_tail_bounds(0.0).lower, 0.0);
        assert_eq!(
            one_sided_tail_bounds(1.0),
            TailBounds {
                lower: 0.5,
                upper: 1.0
            }
        );
        assert_eq!(
            one_sided_tail_bounds(-1.0),
            TailBounds {
                lower: 0.0,
                upper: 0.5
            }
        );
    }

    #[test]
    fn two_sided_examples() {
        assert_eq!(two_sided_tail_bound(1.0).unwrap(), 1.0);
        assert_eq!(two_sided_tail_bound(2.0).unwrap(), 0.4);
        // Chebyshev gives 1/c² = 0.25 at c = 2, tighter than 0.4.
        assert!(two_sided_tail_bound(2.0).unwrap() > 0.25);
        assert_eq!(two_sided_tail_bound(0.5).unwrap(), 1.6);
        assert!(two_sided_tail_bound(0.0).is_err());
        assert!(two_sided_tail_bound(-1.0).is_err());
    }
}
