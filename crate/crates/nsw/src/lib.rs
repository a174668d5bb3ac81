//! Exact and approximate maximization of Nash social welfare for indivisible
//! goods under 2-value additive valuations: every good is worth either 1 or a
//! common value p to each agent.
//!
//! The crate provides:
//! - [`model`]: instances, allocations, exact utilities and welfare products;
//! - [`binary`]: the heavy-only (binary-valuation) leximax solver built on
//!   alternating augmenting paths, plus a near-linear variant and peeling;
//! - [`solver`]: the three-phase exact solver for integral p and the
//!   p-rounding approximation for rational p;
//! - [`oracle`]: brute-force enumeration used as ground truth in tests;
//! - [`properties`]: EF1/EFX/Pareto checkers, symmetric-difference
//!   decomposition, and replay checks for solver traces;
//! - [`io`] / [`generate`]: JSON formats and seeded instance generation.
//!
//! All welfare decisions use exact rational arithmetic; floats appear only in
//! display fields.

pub mod binary;
pub mod fixtures;
pub mod generate;
pub mod io;
pub mod model;
pub mod oracle;
pub mod properties;
pub mod solver;

pub use model::{Allocation, Instance, NswProduct, Rational, UtilityProfile, UtilityVector};
pub use solver::{approx_solve, solve, ApproxResult, SolveResult};
