//! Matching extendability of graphs.
//!
//! The crate bundles an exact k-extendability oracle built on a blossom
//! matching solver, constructive extenders for grid-like product graphs and
//! the six-row bow-tie graph, closed-form surface bounds, and an audit of
//! surface embeddings given as signed rotation systems.

pub mod constructive;
pub mod embedding;
pub mod error;
pub mod extendability;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod scalar;
pub mod surfaces;

pub use error::{Error, Result};
pub use graph::{Graph, Label, Vertex, VertexSet};
pub use matching::{Matching, MatchingKind, TutteViolator};
pub use scalar::Scalar;

/// Exact rational used for every verdict-bearing quantity.
pub type Rational = num_rational::Ratio<i64>;

pub use embedding::{ContributionReport, RotationSystem};
pub use surfaces::Surface;

/// Euler contributions in exact arithmetic.
pub type ExactContributions = ContributionReport<Rational>;
/// Euler contributions in `f64`, for inspection only.
pub type FloatContributions = ContributionReport<f64>;
