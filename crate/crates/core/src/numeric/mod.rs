//! Exact scalars and closed interval sets.

mod interval;
mod rational;

pub use interval::{Interval, IntervalUnion, OpenInterval};
pub use rational::Rational;
