use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::distribution::{winsorized_expectation, DiscreteDistribution};
use super::problem::{validate_grid, OracleProblem};
use super::vertex::{minimize, Constraints, Vertex};
use crate::bounds::moments::MomentSpec;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSolution {
    /// `E(argmin ∧ c)`, evaluated on the returned distribution.
    pub value: f64,
    pub argmin: DiscreteDistribution,
    pub feasible_vertices: usize,
    /// Candidate supports skipped as singular or ill-conditioned.
    pub skipped_systems: usize,
}

/// Minimizes `E(X ∧ c)` over the grid-supported distributions of `problem`.
///
/// Exact ties between vertices go to the lexicographically smallest support.
pub fn oracle_min(problem: &OracleProblem) -> Result<OracleSolution> {
    let spec = problem.spec();
    let c = problem.strike().value();
    let grid = problem.grid();
    let cons = Constraints::new(spec, grid, problem.tail_constraint().map(|t| (c, t)))?;
    let cost: Vec<f64> = grid.iter().map(|&x| x.min(c)).collect();
    let minima = minimize(&cons, &[cost])?;
    let argmin = to_distribution(grid, &minima.best[0].vertex);
    Ok(OracleSolution {
        value: winsorized_expectation(&argmin, problem.strike()),
        argmin,
        feasible_vertices: minima.feasible_vertices,
        skipped_systems: minima.skipped_systems,
    })
}

/// A vertex of the grid-supported moment polytope, chosen by minimizing a
/// linear objective with i.i.d. uniform(−1, 1) weights drawn from `seed`.
pub fn random_feasible(
    spec: MomentSpec,
    grid: &[f64],
    lower_bound: Option<f64>,
    seed: u64,
) -> Result<DiscreteDistribution> {
    Ok(random_feasible_batch(spec, grid, lower_bound, seed, 1)?.remove(0))
}

/// `count` samples from one enumeration pass; sample `t` equals
/// `random_feasible(spec, grid, lower_bound, seed + t)`.
pub fn random_feasible_batch(
    spec: MomentSpec,
    grid: &[f64],
    lower_bound: Option<f64>,
    seed: u64,
    count: usize,
) -> Result<Vec<DiscreteDistribution>> {
    validate_grid(grid, lower_bound)?;
    let cons = Constraints::new(spec, grid, None)?;
    let costs: Vec<Vec<f64>> = (0..count as u64)
        .map(|t| random_weights(grid.len(), seed.wrapping_add(t)))
        .collect();
    let minima = minimize(&cons, &costs)?;
    Ok(minima
        .best
        .iter()
        .map(|b| to_distribution(grid, &b.vertex))
        .collect())
}

pub(crate) fn random_weights(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Drops zero-probability atoms of a vertex and rescales the rest to sum to
/// one exactly (the rescaling is at the level of rounding).
pub(crate) fn to_distribution(grid: &[f64], vertex: &Vertex) -> DiscreteDistribution {
    let atoms: Vec<(f64, f64)> = vertex
        .atoms()
        .filter(|(_, p)| *p > 0.0)
        .map(|(j, p)| (grid[j], p))
        .collect();
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    let (support, probs) = atoms.into_iter().map(|(x, p)| (x, p / total)).unzip();
    DiscreteDistribution::new(support, probs).expect("vertex probabilities form a distribution")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::moments::Strike;
    use crate::bounds::scarf::scarf_min;
    use crate::error::BoundsError;
    use crate::oracle::problem::{augment_grid, default_grid, uniform_grid};

    fn spec(m: f64, s: f64) -> MomentSpec {
        MomentSpec::new(m, s).unwrap()
    }

    #[test]
    fn low_strike_example() {
        let k = Strike::new(0.5).unwrap();
        let grid = augment_grid(&uniform_grid(0.0, 11.0, 45), &[0.5, 2.0]);
        let prob = OracleProblem::new(spec(1.0, 1.0), k, grid, Some(0.0), None).unwrap();
        let sol = oracle_min(&prob).unwrap();
        assert!((sol.value - 0.25).abs() < 1e-9);
        assert_eq!(sol.argmin.support(), &[0.0, 2.0]);
        assert!((sol.argmin.probs()[0] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn high_strike_example() {
        let s = spec(1.0, 1.0);
        let k = Strike::new(3.0).unwrap();
        let e = scarf_min(s, k).unwrap().extremal.unwrap();
        let grid = augment_grid(&default_grid(s, Some(0.0), 60), &[3.0, e.low(), e.high()]);
        let prob = OracleProblem::new(s, k, grid, Some(0.0), None).unwrap();
        let sol = oracle_min(&prob).unwrap();
        assert!((sol.value - (2.0 - 0.5 * 5f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn positivity_with_zero_mean_is_infeasible() {
        let k = Strike::new(1.0).unwrap();
        let prob = OracleProblem::new(
            spec(0.0, 1.0),
            k,
            uniform_grid(0.0, 10.0, 30),
            Some(0.0),
            None,
        )
        .unwrap();
        assert_eq!(oracle_min(&prob).unwrap_err(), BoundsError::Infeasible);
        assert_eq!(
            random_feasible(spec(0.0, 1.0), &uniform_grid(0.0, 10.0, 30), Some(0.0), 3)
                .unwrap_err(),
            BoundsError::Infeasible
        );
    }

    #[test]
    fn tail_constraint_pins_probability() {
        let s = spec(0.0, 1.0);
        let k = Strike::new(0.5).unwrap();
        let grid = uniform_grid(-4.0, 4.0, 25);
        let prob = OracleProblem::new(s, k, grid, None, Some(0.7)).unwrap();
        let sol = oracle_min(&prob).unwrap();
        assert!((sol.argmin.prob_le(0.5) - 0.7).abs() < 1e-12);
        assert!(sol.argmin.len() <= 4);
        // L_c(p) is the infimum over the whole sphere at this p, so the grid can only do worse.
        let l = crate::bounds::two_point::l_value(0.7, 0.5).unwrap();
        assert!(sol.value >= l - 1e-9);
    }

    #[test]
    fn random_feasible_moments_and_support() {
        let g = uniform_grid(-9.0, 11.0, 40);
        let d = random_feasible(spec(0.0, 1.0), &uniform_grid(-10.0, 10.0, 40), None, 1).unwrap();
        assert!(d.mean().abs() < 1e-12);
        assert!((d.variance() - 1.0).abs() < 1e-12);
        let d =
            random_feasible(spec(1.0, 1.0), &uniform_grid(0.0, 11.0, 40), Some(0.0), 7).unwrap();
        assert!(d.support().iter().all(|&x| x >= 0.0));
        assert!((d.mean() - 1.0).abs() < 1e-12);
        let a = random_feasible(spec(1.0, 1.0), &g, None, 42).unwrap();
        let b = random_feasible(spec(1.0, 1.0), &g, None, 42).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn batch_matches_individual_draws() {
        let g = uniform_grid(0.0, 11.0, 30);
        let batch = random_feasible_batch(spec(1.0, 1.0), &g, Some(0.0), 100, 5).unwrap();
        for (t, d) in batch.iter().enumerate() {
            let single = random_feasible(spec(1.0, 1.0), &g, Some(0.0), 100 + t as u64).unwrap();
            assert_eq!(d, &single);
        }
    }
}
