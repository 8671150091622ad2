//! Verified-computation workbench for a family of exponential-sum
//! estimates: exact rational exponent bookkeeping, piecewise-linear bound
//! catalogs, oscillatory-sum evaluation, and lattice-count cross-checks.

pub mod bounds;
pub mod cli;
pub mod dd;
pub mod error;
pub mod lattice;
pub mod planner;
pub mod pwl;
pub mod rational;
pub mod report;
pub mod sums;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
