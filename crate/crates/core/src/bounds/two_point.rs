//! Two-point distributions on the standardized sphere and the one-parameter
//! objective `L_c` they induce.
//!
//! A two-point variable with `P(X = x) = p`, `P(X = y) = 1 − p`, `x < y`, has
//! mean 0 and variance 1 exactly when `x = −√((1−p)/p)` and `y = √(p/(1−p))`,
//! so the whole family is indexed by `p ∈ (0, 1)`.

use serde::{Deserialize, Serialize};

use super::moments::MomentSpec;
use crate::error::{BoundsError, Result};
use crate::oracle::distribution::DiscreteDistribution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPointDistribution {
    low: f64,
    high: f64,
    p_low: f64,
}

impl TwoPointDistribution {
    pub fn new(low: f64, high: f64, p_low: f64) -> Result<Self> {
        if !(low.is_finite() && high.is_finite()) || low >= high {
            return Err(BoundsError::InvalidDistribution(format!(
                "two-point support needs finite low < high, got ({low}, {high})"
            )));
        }
        if !(p_low > 0.0 && p_low < 1.0) {
            return Err(BoundsError::out_of_range(
                "p_low",
                p_low,
                "must lie in (0, 1)",
            ));
        }
        Ok(Self { low, high, p_low })
    }

    pub fn low(&self) -> f64 {
        self.low
    }

    pub fn high(&self) -> f64 {
        self.high
    }

    pub fn p_low(&self) -> f64 {
        self.p_low
    }

    pub fn p_high(&self) -> f64 {
        1.0 - self.p_low
    }

    pub fn mean(&self) -> f64 {
        self.p_low * self.low + self.p_high() * self.high
    }

    pub fn second_moment(&self) -> f64 {
        self.p_low * self.low * self.low + self.p_high() * self.high * self.high
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        let dl = self.low - mean;
        let dh = self.high - mean;
        self.p_low * dl * dl + self.p_high() * dh * dh
    }

    /// `E(X ∧ c)`.
    pub fn winsorized_expectation(&self, c: f64) -> f64 {
        self.p_low * self.low.min(c) + self.p_high() * self.high.min(c)
    }

    /// `E(X − c)⁺`.
    pub fn expected_call(&self, c: f64) -> f64 {
        self.p_low * (self.low - c).max(0.0) + self.p_high() * (self.high - c).max(0.0)
    }

    /// Image under `z ↦ m + σz`, taking a standardized distribution to price units.
    pub fn to_raw(&self, spec: &MomentSpec) -> Self {
        Self {
            low: spec.to_raw(self.low),
            high: spec.to_raw(self.high),
            p_low: self.p_low,
        }
    }

    pub fn to_discrete(&self) -> DiscreteDistribution {
        DiscreteDistribution::new(vec![self.low, self.high], vec![self.p_low, self.p_high()])
            .expect("a valid two-point distribution is a valid discrete distribution")
    }

    /// Returns a copy with the low atom raised to `floor` if it sits below it.
    pub(crate) fn with_low_floor(mut self, floor: f64) -> Self {
        if self.low < floor {
            self.low = floor;
        }
        self
    }
}

/// The unique mean-0, variance-1 two-point distribution putting mass `p` on its lower atom.
pub fn two_point_from_p(p: f64) -> Result<TwoPointDistribution> {
    check_open_unit(p)?;
    let q = 1.0 - p;
    TwoPointDistribution::new(-(q / p).sqrt(), (p / q).sqrt(), p)
}

/// Set of `p` for which some mean-0, variance-1 variable has `P(X ≤ c) = p`.
///
/// At `c = 0` the interval is `[0, 1)` as a set, although `p = 0` itself is
/// not attained by any variable on the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibleInterval {
    pub lower: f64,
    pub upper: f64,
    pub lower_closed: bool,
    pub upper_closed: bool,
}

impl FeasibleInterval {
    pub fn contains(&self, p: f64) -> bool {
        let above = if self.lower_closed {
            p >= self.lower
        } else {
            p > self.lower
        };
        let below = if self.upper_closed {
            p <= self.upper
        } else {
            p < self.upper
        };
        above && below
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    /// `count` points strictly inside the interval, at the midpoints of an
    /// even partition.
    pub fn interior_points(&self, count: usize) -> Vec<f64> {
        let w = self.width();
        (0..count)
            .map(|j| self.lower + w * (j as f64 + 0.5) / count as f64)
            .collect()
    }
}

pub fn feasible_p_interval(c: f64) -> FeasibleInterval {
    let c2 = c * c;
    if c >= 0.0 {
        FeasibleInterval {
            lower: c2 / (1.0 + c2),
            upper: 1.0,
            lower_closed: true,
            upper_closed: false,
        }
    } else {
        FeasibleInterval {
            lower: 0.0,
            upper: 1.0 / (1.0 + c2),
            lower_closed: false,
            upper_closed: true,
        }
    }
}

/// `L_c(p) = −√(p − p²) + c(1 − p)`, the minimum of `E(X ∧ c)` over the
/// standardized variables with `P(X ≤ c) = p`.
pub fn l_value(p: f64, c: f64) -> Result<f64> {
    check_open_unit(p)?;
    let q = 1.0 - p;
    Ok(-(p * q).sqrt() + c * q)
}

/// Minimizer of `L_c` over `(0, 1)`: `½ + ½c/√(1+c²)`.
pub fn p_star(c: f64) -> f64 {
    0.5 + 0.5 * c / c.hypot(1.0)
}

/// Parameter of the two-point variable whose lower atom sits exactly at `−m_std`.
pub fn p_m(m_std: f64) -> Result<f64> {
    if !(m_std.is_finite() && m_std > 0.0) {
        return Err(BoundsError::out_of_range(
            "standardized mean",
            m_std,
            "must be positive and finite; no mean-0 variance-1 variable is bounded below by -m_std <= 0",
        ));
    }
    Ok(1.0 / (1.0 + m_std * m_std))
}

fn check_open_unit(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(BoundsError::out_of_range(
            "p",
            p,
            "must lie in the open interval (0, 1)",
        ))
    }
}
