//! Command line, dataset writer and verification sweep for peak polynomials.

pub mod census;
pub mod cli;
pub mod dataset;
pub mod json;
pub mod sweep;

use std::fmt;

/// A bad flag value or violated precondition; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}
