use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A caller-supplied argument is outside its valid range.
    Argument(String),
    /// A dataset violates the labeled-dataset invariants.
    InvalidDataset(String),
    /// A special function or distribution was evaluated outside its domain.
    Domain(String),
    /// `C^N'` labelings would exceed the per-column entry limit.
    CapacityLimit {
        num_classes: usize,
        holdout_size: usize,
        limit: usize,
    },
    /// An iterative routine produced a non-finite value.
    NumericalFailure { iteration: usize, detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Argument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidDataset(msg) => write!(f, "invalid dataset: {msg}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::CapacityLimit {
                num_classes,
                holdout_size,
                limit,
            } => write!(
                f,
                "labeling space too large: {num_classes}^{holdout_size} exceeds the limit of \
                 {limit} entries per column; use a smaller holdout size"
            ),
            Error::NumericalFailure { iteration, detail } => {
                write!(f, "numerical failure at iteration {iteration}: {detail}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn argument(msg: impl Into<String>) -> Error {
    Error::Argument(msg.into())
}
