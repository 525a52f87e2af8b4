//! Closed-form bounds and the two-point distributions that attain them.
//!
//! Everything here works on two scales. Raw quantities carry the user's
//! price units and are wrapped in [`MomentSpec`](moments::MomentSpec) and
//! [`Strike`](moments::Strike); standardized quantities are dimensionless
//! plain `f64`s living on the mean-0, variance-1 sphere, reached through
//! [`standardize`](moments::standardize).

pub mod dlp;
pub mod moments;
pub mod scarf;
pub mod two_point;
