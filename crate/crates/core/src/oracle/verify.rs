//! Closed form against brute force, packaged as reports.

use serde::{Deserialize, Serialize};

use super::distribution::{expected_call, winsorized_expectation, DiscreteDistribution};
use super::problem::{augment_grid, default_grid, OracleProblem};
use super::solve::{random_weights, to_distribution};
use super::vertex::{minimize, Constraints};
use crate::bounds::dlp::dlp_bounds;
use crate::bounds::moments::{standardize, MomentSpec, Strike};
use crate::bounds::scarf::scarf_min;
use crate::bounds::two_point::{feasible_p_interval, two_point_from_p};
use crate::error::{BoundsError, Result};
use crate::oracle::solve::random_feasible_batch;
use crate::tolerance::SUMMATION_ABS;

/// Grid size for the unconstrained sampler used by [`verify_dlp`].
pub const DLP_SAMPLER_GRID: usize = 41;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub closed_form: f64,
    pub oracle_value: f64,
    pub oracle_distribution: DiscreteDistribution,
    /// `oracle_value − closed_form`.
    pub gap: f64,
    pub random_trials: usize,
    /// Smallest slack of any sampled distribution against the claimed bound;
    /// zero when no trials were run.
    pub worst_violation: f64,
}

impl VerificationReport {
    pub fn passes(&self, gap_tol: f64) -> bool {
        self.gap.abs() <= gap_tol && self.worst_violation >= -SUMMATION_ABS
    }
}

/// Checks the minimum of `E(X ∧ c)` over nonnegative `X` against the grid
/// oracle, on a default grid of `grid_points` points augmented with the
/// strike and the closed-form minimizer's atoms.
pub fn verify_scarf(
    spec: MomentSpec,
    c: Strike,
    grid_points: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let sol = scarf_min(spec, c)?;
    let extremal = sol.extremal.ok_or_else(|| {
        BoundsError::Degenerate(format!("strike must be positive, got {}", c.value()))
    })?;
    let grid = augment_grid(
        &default_grid(spec, Some(0.0), grid_points),
        &[c.value(), extremal.low(), extremal.high()],
    );
    verify_scarf_on_grid(spec, c, grid, trials, seed)
}

/// As [`verify_scarf`], on a caller-chosen grid of nonnegative points. A grid
/// missing the minimizer's atoms yields a positive gap.
pub fn verify_scarf_on_grid(
    spec: MomentSpec,
    c: Strike,
    grid: Vec<f64>,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    let sol = scarf_min(spec, c)?;
    if sol.extremal.is_none() {
        return Err(BoundsError::Degenerate(format!(
            "strike must be positive, got {}",
            c.value()
        )));
    }
    let closed_form = sol.min_winsorized;
    let problem = OracleProblem::new(spec, c, grid, Some(0.0), None)?;
    let grid = problem.grid();
    let cons = Constraints::new(spec, grid, None)?;

    let mut costs = Vec::with_capacity(trials + 1);
    costs.push(grid.iter().map(|&x| x.min(c.value())).collect::<Vec<f64>>());
    costs.extend((0..trials as u64).map(|t| random_weights(grid.len(), seed.wrapping_add(t))));
    let minima = minimize(&cons, &costs)?;

    let oracle_distribution = to_distribution(grid, &minima.best[0].vertex);
    let oracle_value = winsorized_expectation(&oracle_distribution, c);
    let worst_violation = minima.best[1..]
        .iter()
        .map(|b| winsorized_expectation(&to_distribution(grid, &b.vertex), c) - closed_form)
        .reduce(f64::min)
        .unwrap_or(0.0);

    Ok(VerificationReport {
        closed_form,
        oracle_value,
        oracle_distribution,
        gap: oracle_value - closed_form,
        random_trials: trials,
        worst_violation,
    })
}

/// Checks the tail-probability call bounds.
///
/// Sharpness: for `p0_grid` values of `p₀ = P(X > c)` inside the feasible
/// range, the two-point member of the sphere with that tail probability must
/// attain the upper bound. The report carries the worst such case.
///
/// Validity: `trials` random feasible distributions (no support bound) must
/// satisfy both bounds.
pub fn verify_dlp(
    spec: MomentSpec,
    c: Strike,
    p0_grid: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    if p0_grid == 0 {
        return Err(BoundsError::InvalidProblem(
            "p0 grid must be non-empty".into(),
        ));
    }
    let cv = c.value();
    let interval = feasible_p_interval(standardize(c, spec).strike_std);

    let mut worst: Option<(f64, f64, DiscreteDistribution)> = None;
    for p in interval.interior_points(p0_grid) {
        let two = two_point_from_p(p)?.to_raw(&spec);
        let bound = dlp_bounds(spec, c, two.p_high())?.upper;
        let attained = two.expected_call(cv);
        let replace = worst
            .as_ref()
            .is_none_or(|(b, a, _)| (attained - bound).abs() > (a - b).abs());
        if replace {
            worst = Some((bound, attained, two.to_discrete()));
        }
    }
    let (closed_form, oracle_value, oracle_distribution) = worst.expect("p0 grid is non-empty");

    let worst_violation = if trials == 0 {
        0.0
    } else {
        let grid = augment_grid(&default_grid(spec, None, DLP_SAMPLER_GRID), &[cv]);
        random_feasible_batch(spec, &grid, None, seed, trials)?
            .iter()
            .map(|d| {
                let b = dlp_bounds(spec, c, d.prob_gt(cv).clamp(0.0, 1.0))
                    .expect("clamped probability is in range");
                let e = expected_call(d, c);
                (e - b.lower).min(b.upper - e)
            })
            .fold(f64::INFINITY, f64::min)
    };

    Ok(VerificationReport {
        closed_form,
        oracle_value,
        oracle_distribution,
        gap: oracle_value - closed_form,
        random_trials: trials,
        worst_violation,
    })
}
