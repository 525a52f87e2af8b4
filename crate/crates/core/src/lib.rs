//! Sharp mean-variance bounds on `E(X ∧ c)` and `E(X − c)⁺`.
//!
//! The [`bounds`] module holds the closed forms: the two-point
//! parametrization of the standardized sphere, feasible tail-probability
//! intervals, the tail-probability-aware call bounds, and the minimum of
//! `E(X ∧ c)` over nonnegative variables with known mean and variance
//! together with the two-point distribution attaining it.
//!
//! The [`oracle`] module is the independent check: it discretizes the same
//! moment problems onto a grid and solves them by exhaustive vertex
//! enumeration, and it samples random feasible distributions for property
//! tests.

pub mod bounds;
pub mod error;
pub mod oracle;
pub mod tolerance;

pub use bounds::dlp::{
    dlp_bounds, one_sided_tail_bounds, two_sided_tail_bound, DlpBounds, TailBounds,
};
pub use bounds::moments::{standardize, MomentSpec, StandardizedProblem, Strike};
pub use bounds::scarf::{
    lo_max, scarf_min, standardized_scarf_inf, threshold_strike, winsorized_floor, Branch,
    ScarfSolution, StandardizedInf,
};
pub use bounds::two_point::{
    feasible_p_interval, l_value, p_m, p_star, two_point_from_p, FeasibleInterval,
    TwoPointDistribution,
};
pub use error::{BoundsError, Result};
pub use oracle::distribution::{expected_call, winsorized_expectation, DiscreteDistribution};
pub use oracle::problem::{uniform_grid, OracleProblem};
pub use oracle::solve::{oracle_min, random_feasible, random_feasible_batch, OracleSolution};
pub use oracle::verify::{verify_dlp, verify_scarf, verify_scarf_on_grid, VerificationReport};
