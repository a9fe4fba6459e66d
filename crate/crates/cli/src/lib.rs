//! Command-line front end for `tracerange`.
//!
//! [`run_command`] does all the work and returns the exit code and output
//! instead of touching the process, so tests can drive it directly.

// Errors carry the offending rationals; they are rare and cheap to move.
#![allow(clippy::result_large_err)]

mod command;
pub mod spec;
mod svg;

pub use command::{run_command, CommandResult, DEPTH_LIMIT_VAR};
pub use spec::{parse_spec, Spec, SpecError};
pub use svg::emit_svg;
