//! Labeling distribution matrices.
//!
//! A holdout set of `N'` points has `C^N'` labelings. They are indexed
//! lexicographically, big-endian in base `C`: the first holdout point is the
//! most significant digit, so labelings starting with class 0 occupy indices
//! `0..C^(N'-1)`. A trained model induces a distribution over these
//! labelings by treating its per-point class probabilities as independent;
//! that distribution is a [`SimplexVector`]. Stacking the simplex vectors of
//! `K` models trained on label-permuted copies of the data gives an
//! [`LDMatrix`].

use crate::classifiers::{Learner, Model};
use crate::dataset::{permute_labels, split_train_holdout, Features, HoldoutSplit, LabeledDataset};
use crate::error::{argument, Error, Result};
use crate::seed::{self, role};
use alloc::format;
use alloc::vec::Vec;

/// Largest labeling space materialized per column.
pub const MAX_LABELINGS: usize = 10_000_000;

/// Added to every simplex entry before renormalizing, so that the Dirichlet
/// fit can take logarithms of entries a confident model set to zero.
pub const SMOOTHING_EPSILON: f64 = 1e-10;

/// Number of labelings `C^N'`, or a capacity-limit error above
/// [`MAX_LABELINGS`].
pub fn labeling_space_size(num_classes: usize, holdout_size: usize) -> Result<usize> {
    let too_big = || Error::CapacityLimit {
        num_classes,
        holdout_size,
        limit: MAX_LABELINGS,
    };
    let exp = u32::try_from(holdout_size).map_err(|_| too_big())?;
    match num_classes.checked_pow(exp) {
        Some(m) if m <= MAX_LABELINGS => Ok(m),
        _ => Err(too_big()),
    }
}

pub fn labeling_to_index(labeling: &[usize], num_classes: usize) -> Result<usize> {
    let mut index: usize = 0;
    for (j, &l) in labeling.iter().enumerate() {
        if l >= num_classes {
            return Err(argument(format!(
                "labeling entry {l} at position {j} is outside 0..{num_classes}"
            )));
        }
        index = index
            .checked_mul(num_classes)
            .and_then(|i| i.checked_add(l))
            .ok_or_else(|| argument("labeling index overflows usize"))?;
    }
    Ok(index)
}

pub fn index_to_labeling(index: usize, num_classes: usize, len: usize) -> Result<Vec<usize>> {
    if num_classes < 2 {
        return Err(argument(format!(
            "need at least 2 classes, got {num_classes}"
        )));
    }
    let in_range = u32::try_from(len)
        .ok()
        .and_then(|e| num_classes.checked_pow(e))
        .is_none_or(|size| index < size);
    if !in_range {
        return Err(argument(format!(
            "index {index} is outside the {num_classes}^{len} labelings"
        )));
    }
    let mut labeling = alloc::vec![0; len];
    let mut rest = index;
    for slot in labeling.iter_mut().rev() {
        *slot = rest % num_classes;
        rest /= num_classes;
    }
    Ok(labeling)
}

/// Probability of every labeling as the product of per-point class
/// probabilities, in index order, before any smoothing.
pub fn labeling_product<P: AsRef<[f64]>>(per_point: &[P]) -> Result<Vec<f64>> {
    let c = per_point.first().map_or(0, |p| p.as_ref().len());
    if per_point.is_empty() || c < 2 {
        return Err(argument("need at least one holdout point and two classes"));
    }
    if per_point.iter().any(|p| p.as_ref().len() != c) {
        return Err(argument(
            "per-point probabilities disagree on the class count",
        ));
    }
    let size = labeling_space_size(c, per_point.len())?;
    let mut probs = Vec::with_capacity(size);
    probs.push(1.0);
    // appending one point multiplies the index by C and adds its class
    for point in per_point {
        let point = point.as_ref();
        let prev = core::mem::take(&mut probs);
        probs.reserve(prev.len() * c);
        for p in prev {
            probs.extend(point.iter().map(|q| p * q));
        }
    }
    Ok(probs)
}

/// A probability vector over the `C^N'` labelings of a holdout set.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVector {
    probs: Vec<f64>,
    num_classes: usize,
    holdout_size: usize,
}

impl SimplexVector {
    /// Wraps an already normalized vector.
    pub fn new(probs: Vec<f64>, num_classes: usize, holdout_size: usize) -> Result<Self> {
        let expected = labeling_space_size(num_classes, holdout_size)?;
        if probs.len() != expected {
            return Err(argument(format!(
                "simplex vector has {} entries, expected {num_classes}^{holdout_size} = {expected}",
                probs.len()
            )));
        }
        if probs.iter().any(|p| !(*p >= 0.0) || !p.is_finite()) {
            return Err(argument("simplex entries must be finite and nonnegative"));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(argument(format!("simplex entries sum to {sum}, not 1")));
        }
        Ok(SimplexVector {
            probs,
            num_classes,
            holdout_size,
        })
    }

    /// Normalizes raw labeling probabilities, adds `epsilon` to every entry
    /// and renormalizes.
    pub fn from_unnormalized(
        mut raw: Vec<f64>,
        num_classes: usize,
        holdout_size: usize,
        epsilon: f64,
    ) -> Result<Self> {
        let sum: f64 = raw.iter().sum();
        if !(sum > 0.0) || !sum.is_finite() {
            return Err(argument(format!("cannot normalize labeling mass {sum}")));
        }
        let denom = 1.0 + epsilon * raw.len() as f64;
        raw.iter_mut()
            .for_each(|p| *p = (*p / sum + epsilon) / denom);
        SimplexVector::new(raw, num_classes, holdout_size)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn holdout_size(&self) -> usize {
        self.holdout_size
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Distribution a trained model places on the labelings of `holdout`,
/// smoothed with [`SMOOTHING_EPSILON`].
pub fn simplex_vector<M: Model + ?Sized>(model: &M, holdout: &Features) -> Result<SimplexVector> {
    let c = model.num_classes();
    let n = holdout.rows();
    labeling_space_size(c, n)?;
    let per_point = holdout
        .iter_rows()
        .map(|z| model.predict_proba(z).map(|p| p.into_vec()))
        .collect::<Result<Vec<_>>>()?;
    let raw = labeling_product(&per_point)?;
    SimplexVector::from_unnormalized(raw, c, n, SMOOTHING_EPSILON)
}

/// `C^N' x K` matrix whose columns are simplex vectors from independently
/// label-permuted training runs.
#[derive(Debug, Clone, PartialEq)]
pub struct LDMatrix {
    columns: Vec<SimplexVector>,
    column_seeds: Vec<u64>,
}

impl LDMatrix {
    pub fn new(columns: Vec<SimplexVector>, column_seeds: Vec<u64>) -> Result<Self> {
        let first = columns
            .first()
            .ok_or_else(|| argument("an LDM needs at least one column"))?;
        let shape = (first.num_classes, first.holdout_size);
        if columns
            .iter()
            .any(|c| (c.num_classes, c.holdout_size) != shape)
        {
            return Err(argument("LDM columns disagree on classes or holdout size"));
        }
        if column_seeds.len() != columns.len() {
            return Err(argument("one seed is required per LDM column"));
        }
        Ok(LDMatrix {
            columns,
            column_seeds,
        })
    }

    /// Number of labelings (rows).
    pub fn rows(&self) -> usize {
        self.columns[0].len()
    }

    /// Number of training runs (columns).
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn num_classes(&self) -> usize {
        self.columns[0].num_classes
    }

    pub fn holdout_size(&self) -> usize {
        self.columns[0].holdout_size
    }

    pub fn columns(&self) -> &[SimplexVector] {
        &self.columns
    }

    pub fn column_seeds(&self) -> &[u64] {
        &self.column_seeds
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.columns[col].probs[row]
    }

    pub fn max_entry(&self) -> f64 {
        self.columns
            .iter()
            .flat_map(|c| c.probs.iter().copied())
            .fold(0.0, f64::max)
    }
}

/// Holdout split shared by every column of an LDM built from `master_seed`.
pub fn fixed_holdout(
    ds: &LabeledDataset,
    holdout_size: usize,
    master_seed: u64,
) -> Result<HoldoutSplit> {
    labeling_space_size(ds.num_classes(), holdout_size)?;
    let mut rng = seed::rng_from_seed(seed::derive(master_seed, role::HOLDOUT, 0));
    split_train_holdout(ds, holdout_size, &mut rng)
}

/// Seed of column `index`: labels are permuted and the model fitted with a
/// stream seeded from it.
pub fn column_seed(master_seed: u64, index: usize) -> u64 {
    seed::derive(master_seed, role::LDM_COLUMN, index as u64)
}

/// One LDM column: permute the training labels, fit, and score the holdout.
pub fn ldm_column<L: Learner + ?Sized>(
    learner: &L,
    split: &HoldoutSplit,
    master_seed: u64,
    index: usize,
) -> Result<SimplexVector> {
    let mut rng = seed::rng_from_seed(column_seed(master_seed, index));
    let train = permute_labels(&split.train, &mut rng);
    let model = learner.fit(&train, &mut rng)?;
    simplex_vector(&model, &split.holdout_features)
}

/// Builds a `C^N' x K` LDM. The holdout is drawn once from `master_seed`;
/// column `i` uses [`column_seed`]`(master_seed, i)`.
pub fn build_ldm<L: Learner + ?Sized>(
    learner: &L,
    ds: &LabeledDataset,
    k: usize,
    holdout_size: usize,
    master_seed: u64,
) -> Result<LDMatrix> {
    if k < 2 {
        return Err(argument(format!(
            "an LDM needs at least 2 columns, got {k}"
        )));
    }
    let split = fixed_holdout(ds, holdout_size, master_seed)?;
    let columns = (0..k)
        .map(|i| ldm_column(learner, &split, master_seed, i))
        .collect::<Result<Vec<_>>>()?;
    let seeds = (0..k).map(|i| column_seed(master_seed, i)).collect();
    LDMatrix::new(columns, seeds)
}
