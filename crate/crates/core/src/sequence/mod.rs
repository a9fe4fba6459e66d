//! Positive non-increasing summable sequences with exact closed-form tails,
//! and the reduction from atomic algebras to their sorted atom traces.

mod algebra;
pub mod doc;
mod model;
mod tail;

pub use algebra::{from_algebra, AlgebraSpec, Factor};
pub use model::{SequenceModel, Terms};
pub use tail::{TailModel, TailTerms, MAX_MATERIALIZED_TERMS};
