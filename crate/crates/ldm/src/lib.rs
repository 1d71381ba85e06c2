//! File formats, parallel drivers and the command line around `ldm_core`.

pub mod cli;
pub mod data;
mod error;
pub mod export;
pub mod parallel;

pub use error::{Error, Result};
pub use ldm_core;
