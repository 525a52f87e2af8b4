use serde::{Deserialize, Serialize};

use crate::bounds::moments::{MomentSpec, Strike};
use crate::error::{BoundsError, Result};

/// Minimize `E(X ∧ c)` over distributions on `grid` with the moments of
/// `spec`, optionally with support bounded below and `P(X ≤ c)` pinned.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleProblem {
    spec: MomentSpec,
    strike: Strike,
    grid: Vec<f64>,
    lower_bound: Option<f64>,
    tail_constraint: Option<f64>,
}

impl OracleProblem {
    pub fn new(
        spec: MomentSpec,
        strike: Strike,
        grid: Vec<f64>,
        lower_bound: Option<f64>,
        tail_constraint: Option<f64>,
    ) -> Result<Self> {
        validate_grid(&grid, lower_bound)?;
        if let Some(t) = tail_constraint {
            if !(0.0..=1.0).contains(&t) {
                return Err(BoundsError::out_of_range(
                    "tail constraint P(X <= c)",
                    t,
                    "must lie in [0, 1]",
                ));
            }
        }
        Ok(Self {
            spec,
            strike,
            grid,
            lower_bound,
            tail_constraint,
        })
    }

    pub fn spec(&self) -> MomentSpec {
        self.spec
    }

    pub fn strike(&self) -> Strike {
        self.strike
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn lower_bound(&self) -> Option<f64> {
        self.lower_bound
    }

    pub fn tail_constraint(&self) -> Option<f64> {
        self.tail_constraint
    }
}

pub(crate) fn validate_grid(grid: &[f64], lower_bound: Option<f64>) -> Result<()> {
    if grid.len() < 3 {
        return Err(BoundsError::InvalidProblem(format!(
            "grid needs at least 3 points, got {}",
            grid.len()
        )));
    }
    if grid.iter().any(|x| !x.is_finite()) {
        return Err(BoundsError::InvalidProblem(
            "grid points must be finite".into(),
        ));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BoundsError::InvalidProblem(
            "grid must be strictly increasing".into(),
        ));
    }
    if let Some(lb) = lower_bound {
        if !lb.is_finite() {
            return Err(BoundsError::InvalidProblem(
                "lower bound must be finite".into(),
            ));
        }
        if grid[0] < lb {
            return Err(BoundsError::InvalidProblem(format!(
                "grid point {} lies below the support bound {lb}",
                grid[0]
            )));
        }
    }
    Ok(())
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            let mut g: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
            g[n - 1] = hi;
            g
        }
    }
}

/// Uniform grid over `[max(lower_bound, m − 10σ), m + 10σ]`.
pub fn default_grid(spec: MomentSpec, lower_bound: Option<f64>, n: usize) -> Vec<f64> {
    let span = 10.0 * spec.std_dev();
    let lo = spec.mean() - span;
    let lo = lower_bound.map_or(lo, |lb| lo.max(lb));
    uniform_grid(lo, spec.mean() + span, n)
}

/// Inserts `extra` points into a sorted grid. A grid point closer than
/// `1e-9` of the grid's span to an extra point is replaced by it, so the
/// result has no near-duplicates and contains every extra point exactly.
pub fn augment_grid(grid: &[f64], extra: &[f64]) -> Vec<f64> {
    let mut extra: Vec<f64> = extra.iter().copied().filter(|x| x.is_finite()).collect();
    extra.sort_by(f64::total_cmp);
    extra.dedup();
    let (lo, hi) = grid
        .iter()
        .chain(extra.iter())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    let tol = 1e-9 * (hi - lo).max(1.0);

    let mut out: Vec<f64> = grid
        .iter()
        .copied()
        .filter(|g| extra.iter().all(|e| (g - e).abs() > tol))
        .chain(extra.iter().copied())
        .collect();
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() <= tol);
    out
}
