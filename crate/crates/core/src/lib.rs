//! Exact cycle statistics of breakpoint graphs.
//!
//! Closed-form and exhaustive computations of (signed) Hultman numbers, their
//! generating functions and moments, and the rearrangement distances and lower
//! bounds derived from breakpoint-graph cycles.

pub mod error;
pub mod exactmath;
pub mod perm;
pub mod bpgraph;
pub mod hultman;
pub mod census;
pub mod distances;
pub mod reference;

pub use error::{Error, Result};
pub use exactmath::{Polynomial, Scalar};
pub use bpgraph::{BreakpointGraph, Configuration, CycleProfile, PerfectMatching};
pub use census::{CensusOptions, DistributionTable, MatchingCensus, Statistic};
pub use distances::{BoundReport, Comparison, DistanceMap, GeneratorSet, Metric};
pub use hultman::{HookPartition, MomentPair};
pub use perm::SignedPermutation;

/// Arbitrary-precision integer used for every count.
pub type ExactInt = num_bigint::BigInt;
/// Arbitrary-precision rational, always in lowest terms.
pub type ExactRational = num_rational::BigRational;
/// Polynomial with exact integer coefficients.
pub type IntPolynomial = Polynomial<ExactInt>;
/// Polynomial with exact rational coefficients.
pub type RationalPolynomial = Polynomial<ExactRational>;
/// Polynomial with `f64` coefficients, for quick numeric diagnostics only.
pub type FloatPolynomial = Polynomial<f64>;
