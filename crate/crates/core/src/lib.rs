//! Exact-arithmetic tools for deciding weak nullity of sequences in
//! `L∞(X)` for one-dimensional Lebesgue domains `X ⊆ ℝ`.

pub mod corpus;
pub mod enclosure;
pub mod error;
pub mod finite_model;
pub mod formula;
pub mod localize;
pub mod piecewise;
pub mod polytope;
pub mod rat;
pub mod restrict;
pub mod sequences;
pub mod sets;
pub mod weaknull;

pub use error::{Error, ParseError, Result};
pub use rat::{q, Rat};
pub use sets::{is_compact_subset, Bound, Domain, Interval, IntervalSet, Measure};
