//! Brute-force ground truth for the closed forms in [`crate::bounds`].
//!
//! A distribution supported on a finite grid with prescribed moments is a
//! point of a polytope `{p ≥ 0 : A p = b}` with three or four equality rows.
//! Linear objectives such as `E(X ∧ c)` are minimized at vertices, and every
//! vertex is the solution of a square system on a support of at most
//! `rank(A)` grid points, so enumerating those supports solves the problem
//! exactly without any LP machinery.

pub mod distribution;
pub mod problem;
pub mod solve;
pub mod verify;

mod vertex;
