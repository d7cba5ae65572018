//! Problem-file parsing, built-in presets, orchestration and reports for
//! the `fgla` finiteness checker.
//!
//! A problem file is a single JSON object; the schema is documented in the
//! repository README and in [`problem::ProblemSpec`].  Rationals are JSON
//! integers or strings `"p/q"`, parsed exactly.

pub mod presets;
pub mod problem;
pub mod report;
pub mod runner;

pub use problem::{ProblemError, ProblemSpec};
pub use report::Report;
pub use runner::{run, run_batch, Mode};
