//! Low-density vertex halves of K4-free graphs.
//!
//! The crate has four layers:
//!
//! * [`graph`]: bit-row graphs, subset edge counts, clique and triangle
//!   statistics, generators, graph6 I/O and the structural helpers
//!   (maximal K4-free supergraphs, join decompositions, independent sets).
//! * [`oracle`]: exact branch-and-bound minimum of `e(S)` over all `k`-subsets
//!   and the extremal characterization checks built on it.
//! * [`selectors`]: derandomized (conditional expectation) constructions of
//!   sparse subsets, the sparse / medium / dense density routes and the
//!   top-level [`selectors::find_sparse_half`] dispatcher.
//! * [`certifier`]: outward-rounded interval arithmetic and a branch-and-bound
//!   sign prover that emits replayable certificates.
//!
//! Numeric code is generic over [`scalar::Scalar`]; the aliases below fix the
//! concrete types used throughout.

pub mod certifier;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod scalar;
pub mod selectors;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSubset};

/// Exact rational used for every threshold comparison and analytic bound.
pub type Rational = num_rational::BigRational;

/// Outward-rounded binary64 interval, the certifier's working type.
pub type Interval64 = certifier::Interval<f64>;

/// Outward-rounded binary32 interval.
pub type Interval32 = certifier::Interval<f32>;

/// Builds the exact rational `num / den`.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
