//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// The variants separate data problems (shape and argument errors), resource
/// guards, antisymmetry validation failures and degenerate geometric
/// configurations, so callers can react to each class differently.
#[derive(Debug, Error)]
pub enum Error {
    /// Shapes of the operands do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An argument violates a precondition that is not a pure shape issue.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The requested tensor would exceed the entry cap.
    #[error("tensor with {entries} entries exceeds the cap of {cap}")]
    TooLarge { entries: u128, cap: usize },

    /// A factorial-cost algorithm was asked for an order it refuses.
    #[error("order {order} exceeds the permutation-expansion limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },

    /// A dense tensor failed antisymmetry validation. Indices are 1-based.
    #[error(
        "not antisymmetric: entry {index:?} is {found}, but the entry at {reference:?} requires {expected}"
    )]
    NotAntisymmetric {
        index: Vec<usize>,
        reference: Vec<usize>,
        found: f64,
        expected: f64,
    },

    /// A geometric construction received inputs without the required span.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// Malformed input text (JSON or CSV).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
