//! Labeled datasets, holdout splits and label randomization.

use crate::error::{argument, Error, Result};
use alloc::format;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;

/// Row-major `rows x cols` matrix of feature values.
#[derive(Debug, Clone, PartialEq)]
pub struct Features {
    data: Vec<f64>,
    rows: usize,
    cols: usize,
}

impl Features {
    pub fn new(data: Vec<f64>, rows: usize, cols: usize) -> Result<Self> {
        if rows.checked_mul(cols) != Some(data.len()) {
            return Err(argument(format!(
                "feature buffer of length {} does not match {rows} x {cols}",
                data.len()
            )));
        }
        Ok(Features { data, rows, cols })
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(argument(format!(
                    "row {i} has {} values, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Features {
            data,
            rows: rows.len(),
            cols,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        // chunks_exact would yield nothing for zero-width rows
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Copies the given rows, in the given order.
    pub fn select(&self, indices: &[usize]) -> Features {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        Features {
            data,
            rows: indices.len(),
            cols: self.cols,
        }
    }
}

/// A feature matrix with one class index per row.
///
/// Invariants: at least one row and one feature column, one label per row,
/// `num_classes >= 2` and every label below `num_classes`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    features: Features,
    labels: Vec<usize>,
    num_classes: usize,
}

impl LabeledDataset {
    pub fn new(features: Features, labels: Vec<usize>, num_classes: usize) -> Result<Self> {
        if features.rows() == 0 || features.cols() == 0 {
            return Err(Error::InvalidDataset(format!(
                "need at least one row and one feature, got {} x {}",
                features.rows(),
                features.cols()
            )));
        }
        if features.rows() != labels.len() {
            return Err(Error::InvalidDataset(format!(
                "{} feature rows but {} labels",
                features.rows(),
                labels.len()
            )));
        }
        if num_classes < 2 {
            return Err(Error::InvalidDataset(format!(
                "need at least 2 classes, got {num_classes}"
            )));
        }
        if let Some((row, &label)) = labels.iter().enumerate().find(|(_, &l)| l >= num_classes) {
            return Err(Error::InvalidDataset(format!(
                "label {label} at row {row} is outside 0..{num_classes}"
            )));
        }
        Ok(LabeledDataset {
            features,
            labels,
            num_classes,
        })
    }

    pub fn features(&self) -> &Features {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false for a constructed dataset; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.cols()
    }

    /// Number of rows carrying each class.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = alloc::vec![0; self.num_classes];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Same features, new labels. Labels must already be validated.
    fn relabeled(&self, labels: Vec<usize>) -> LabeledDataset {
        debug_assert_eq!(labels.len(), self.labels.len());
        LabeledDataset {
            features: self.features.clone(),
            labels,
            num_classes: self.num_classes,
        }
    }
}

/// A training set together with the features of the rows held out from it.
#[derive(Debug, Clone, PartialEq)]
pub struct HoldoutSplit {
    pub train: LabeledDataset,
    pub holdout_features: Features,
    /// Source-dataset row indices of the holdout rows, ascending.
    pub holdout_indices: Vec<usize>,
}

/// Draws `holdout_size` rows uniformly without replacement as the holdout.
///
/// Holdout rows are kept in ascending source order, and the remaining rows
/// form the training set in their original order.
pub fn split_train_holdout<R: Rng + ?Sized>(
    ds: &LabeledDataset,
    holdout_size: usize,
    rng: &mut R,
) -> Result<HoldoutSplit> {
    let n = ds.len();
    if holdout_size == 0 || holdout_size >= n {
        return Err(argument(format!(
            "holdout size must be in 1..{n}, got {holdout_size}"
        )));
    }
    let mut holdout_indices = rand::seq::index::sample(rng, n, holdout_size).into_vec();
    holdout_indices.sort_unstable();

    let mut in_holdout = alloc::vec![false; n];
    for &i in &holdout_indices {
        in_holdout[i] = true;
    }
    let train_indices: Vec<usize> = (0..n).filter(|&i| !in_holdout[i]).collect();
    let train = LabeledDataset {
        features: ds.features.select(&train_indices),
        labels: train_indices.iter().map(|&i| ds.labels[i]).collect(),
        num_classes: ds.num_classes,
    };
    Ok(HoldoutSplit {
        train,
        holdout_features: ds.features.select(&holdout_indices),
        holdout_indices,
    })
}

/// Rearranges the labels by a uniformly random permutation.
pub fn permute_labels<R: Rng + ?Sized>(ds: &LabeledDataset, rng: &mut R) -> LabeledDataset {
    let mut labels = ds.labels.clone();
    labels.shuffle(rng);
    ds.relabeled(labels)
}

/// Replaces every label with an independent uniform draw from `0..C`.
pub fn random_labels<R: Rng + ?Sized>(ds: &LabeledDataset, rng: &mut R) -> LabeledDataset {
    let c = ds.num_classes;
    let labels = (0..ds.len()).map(|_| rng.random_range(0..c)).collect();
    ds.relabeled(labels)
}
