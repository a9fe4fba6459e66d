//! Exact subset-sum ranges of summable sequences and trace ranges of finite
//! atomic von Neumann algebras.
//!
//! A positive non-increasing sequence `a_1 ≥ a_2 ≥ …` reaches every value in
//! `[0, Σ a_n]` as a subset sum exactly when `a_n ≤ Σ_{k>n} a_k` for all `n`.
//! Applied to the traces of the minimal projections of an atomic algebra, the
//! same test decides whether its trace range over projections is convex.
//!
//! All arithmetic is exact; see [`Rational`].

// Errors carry the offending rationals; they are rare and cheap to move.
#![allow(clippy::result_large_err)]

pub mod error;
pub mod extreme;
pub mod numeric;
pub mod range;
pub mod representability;
pub mod sequence;

pub use error::{Error, ErrorKind, Result};
pub use extreme::RadixWord;
pub use numeric::{Interval, IntervalUnion, OpenInterval, Rational};
pub use sequence::{from_algebra, AlgebraSpec, Factor, SequenceModel, TailModel};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/completeness.md")]
    mod completeness {}
    #[doc = include_str!("../../../book/src/ranges.md")]
    mod ranges {}
    #[doc = include_str!("../../../book/src/extreme-points.md")]
    mod extreme_points {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
