//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A numeric argument lies outside its mathematical domain.
    Domain(String),
    /// Vector dimensions disagree.
    DimensionMismatch { expected: usize, got: usize },
    /// An operation drew from an empty pool or an empty input set.
    EmptyInput(String),
    /// A training fold exposes only one class.
    SingleClass,
    /// Structurally invalid input (malformed table, bad mapping, ...).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::EmptyInput(what) => write!(f, "empty input: {what}"),
            Error::SingleClass => write!(f, "training data contains only one class"),
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
