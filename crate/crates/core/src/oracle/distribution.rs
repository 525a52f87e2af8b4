use serde::{Deserialize, Serialize};

use crate::bounds::moments::Strike;
use crate::error::{BoundsError, Result};

/// Finite-support distribution: strictly increasing atoms with their probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteDistribution {
    support: Vec<f64>,
    probs: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(support: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != probs.len() {
            return Err(BoundsError::InvalidDistribution(format!(
                "support and probabilities must be non-empty and of equal length ({} vs {})",
                support.len(),
                probs.len()
            )));
        }
        if support.iter().any(|x| !x.is_finite()) {
            return Err(BoundsError::InvalidDistribution(
                "support must be finite".into(),
            ));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BoundsError::InvalidDistribution(
                "support must be strictly increasing".into(),
            ));
        }
        if probs.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(BoundsError::InvalidDistribution(
                "probabilities must be nonnegative and finite".into(),
            ));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(BoundsError::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { support, probs })
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.support.iter().copied().zip(self.probs.iter().copied())
    }

    /// `E f(X)`.
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.atoms().map(|(x, p)| p * f(x)).sum()
    }

    pub fn mean(&self) -> f64 {
        self.expect(|x| x)
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.expect(|x| (x - m) * (x - m))
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    pub fn prob_le(&self, c: f64) -> f64 {
        self.atoms().filter(|(x, _)| *x <= c).map(|(_, p)| p).sum()
    }

    pub fn prob_lt(&self, c: f64) -> f64 {
        self.atoms().filter(|(x, _)| *x < c).map(|(_, p)| p).sum()
    }

    pub fn prob_gt(&self, c: f64) -> f64 {
        self.atoms().filter(|(x, _)| *x > c).map(|(_, p)| p).sum()
    }

    /// `P(|X| > c)`.
    pub fn prob_abs_gt(&self, c: f64) -> f64 {
        self.atoms()
            .filter(|(x, _)| x.abs() > c)
            .map(|(_, p)| p)
            .sum()
    }

    /// The image of this distribution under `x ↦ a + b·x`, `b > 0`.
    pub fn affine(&self, a: f64, b: f64) -> Self {
        assert!(b > 0.0, "affine map must be increasing");
        Self {
            support: self.support.iter().map(|x| a + b * x).collect(),
            probs: self.probs.clone(),
        }
    }
}

/// `Σ pᵢ · min(xᵢ, c)`.
pub fn winsorized_expectation(dist: &DiscreteDistribution, c: Strike) -> f64 {
    let c = c.value();
    dist.expect(|x| x.min(c))
}

/// `Σ pᵢ · max(xᵢ − c, 0)`.
pub fn expected_call(dist: &DiscreteDistribution, c: Strike) -> f64 {
    let c = c.value();
    dist.expect(|x| (x - c).max(0.0))
}
