//! Verification harness, witness extraction and expression evaluation on
//! top of `profree-core`.

pub mod error;
pub mod eval;
pub mod report;
pub mod suites;
pub mod witness;

pub use report::{Failure, Report};
