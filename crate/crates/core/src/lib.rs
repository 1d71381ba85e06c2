//! Capacity estimation for classification algorithms.
//!
//! Two probes are provided:
//!
//! * the **labeling distribution matrix** (LDM): a classifier is trained on
//!   many label-permuted copies of a dataset, and for each run the
//!   probability it assigns to every possible labeling of a fixed holdout set
//!   becomes one column. A Dirichlet distribution is fitted to the columns
//!   by maximum likelihood and its differential entropy scores how diverse
//!   the classifier's outputs are;
//! * the **label recorder**: a classifier is trained on uniformly random
//!   labels and tested on its own training points. The number of labels it
//!   reproduces estimates how much it can memorize.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, parallel drivers
//! and the command line live in the companion `ldm` crate.

#![cfg_attr(not(test), no_std)]
// NaN must fail the positivity checks, so `!(x > 0.0)` is intended
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod classifiers;
pub mod dataset;
pub mod dirichlet;
mod error;
pub mod heatmap;
pub mod ldm;
pub mod recorder;
pub mod seed;
pub mod special;

pub use classifiers::{ClassProbabilities, ClassifierSpec, Depth, Learner, Model, TrainedModel};
pub use dataset::{Features, HoldoutSplit, LabeledDataset};
pub use dirichlet::{DirichletParams, FitReport};
pub use error::{Error, Result};
pub use heatmap::{HeatmapConfig, Scale};
pub use ldm::{LDMatrix, SimplexVector};
pub use recorder::CapacityEstimate;
