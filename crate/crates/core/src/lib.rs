//! Weighted fair division of indivisible items with exact rational arithmetic.
//!
//! Agents carry positive entitlements (weights) and additive utilities over
//! items. The crate computes allocations with picking sequences, divisor
//! methods and welfare maximization, evaluates maximin-style share thresholds,
//! and verifies weighted envy, proportionality, ordering and quota notions.
//! Small instances are solved by exhaustive search with explicit budgets.

#![allow(clippy::result_large_err)]

pub mod enumerate;
pub mod error;
pub mod fairness;
pub mod fixtures;
pub mod io;
pub mod limits;
pub mod lp;
pub mod model;
pub mod notion;
pub mod picking;
pub mod rational;
pub mod shares;
pub mod verdict;
pub mod welfare;

pub use error::{Error, Result};
pub use limits::SearchLimits;
pub use notion::Notion;
pub use model::{bundle_utility, counts_to_allocation, validate_instance, Allocation, IdenticalCounts, Instance};
pub use rational::Rational;
pub use verdict::{Subject, Verdict, Witness};
