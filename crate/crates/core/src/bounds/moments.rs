use serde::{Deserialize, Serialize};

use crate::error::{BoundsError, Result};

/// Mean and standard deviation of the unknown distribution, in price units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSpec {
    mean: f64,
    std_dev: f64,
}

impl MomentSpec {
    /// Rejects non-finite values and `std_dev <= 0`: there is no distribution
    /// on the sphere of radius zero worth bounding.
    pub fn new(mean: f64, std_dev: f64) -> Result<Self> {
        if !mean.is_finite() {
            return Err(BoundsError::InvalidSpec(format!(
                "mean must be finite, got {mean}"
            )));
        }
        if !std_dev.is_finite() || std_dev <= 0.0 {
            return Err(BoundsError::InvalidSpec(format!(
                "std_dev must be positive and finite, got {std_dev}"
            )));
        }
        Ok(Self { mean, std_dev })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn std_dev(&self) -> f64 {
        self.std_dev
    }

    pub fn variance(&self) -> f64 {
        self.std_dev * self.std_dev
    }

    /// `E X²`.
    pub fn second_moment(&self) -> f64 {
        self.mean * self.mean + self.std_dev * self.std_dev
    }

    /// Standardized mean `m/σ`.
    pub fn mean_std(&self) -> f64 {
        self.mean / self.std_dev
    }

    /// Maps a standardized value back to price units, `m + σz`.
    pub fn to_raw(&self, z: f64) -> f64 {
        self.mean + self.std_dev * z
    }

    /// `(x − m)/σ`.
    pub fn to_std(&self, x: f64) -> f64 {
        (x - self.mean) / self.std_dev
    }

    /// `max(|m|, σ, |c|)`, the magnitude relative comparisons on this problem are scaled by.
    pub fn scale(&self, c: Strike) -> f64 {
        self.mean.abs().max(self.std_dev).max(c.value().abs())
    }
}

/// The threshold `c` at which `X` is Winsorized (or the call struck), in price units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Strike(f64);

impl Strike {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(BoundsError::out_of_range("strike", value, "must be finite"));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A problem on the standardized sphere: strike `c̃ = (c − m)/σ` and the
/// support lower bound `−m/σ` that the constraint `X ≥ 0` turns into.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardizedProblem {
    pub strike_std: f64,
    pub lower_bound_std: f64,
}

pub fn standardize(c: Strike, spec: MomentSpec) -> StandardizedProblem {
    StandardizedProblem {
        strike_std: spec.to_std(c.value()),
        lower_bound_std: -spec.mean() / spec.std_dev(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_bad_specs() {
        assert!(MomentSpec::new(1.0, 0.0).is_err());
        assert!(MomentSpec::new(1.0, -1.0).is_err());
        assert!(MomentSpec::new(f64::NAN, 1.0).is_err());
        assert!(MomentSpec::new(1.0, f64::INFINITY).is_err());
        assert!(Strike::new(f64::NAN).is_err());
        assert!(MomentSpec::new(-3.0, 0.5).is_ok());
    }

    #[test]
    fn strike_at_mean_standardizes_to_zero() {
        for sigma in [0.1, 1.0, 7.5] {
            let spec = MomentSpec::new(2.5, sigma).unwrap();
            assert_eq!(standardize(Strike::new(2.5).unwrap(), spec).strike_std, 0.0);
        }
    }

    #[test]
    fn direct_arithmetic() {
        let spec = MomentSpec::new(1.0, 2.0).unwrap();
        let p = standardize(Strike::new(2.0).unwrap(), spec);
        assert_eq!(p.strike_std, 0.5);
        assert_eq!(p.lower_bound_std, -0.5);
    }

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let spec = MomentSpec::new(rng.random_range(-10.0..10.0), rng.random_range(0.01..10.0))
                .unwrap();
            let c = rng.random_range(-20.0..20.0);
            let z = standardize(Strike::new(c).unwrap(), spec).strike_std;
            assert!((spec.to_raw(z) - c).abs() <= 1e-12 * c.abs().max(1.0));
        }
    }
}
