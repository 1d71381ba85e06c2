//! Label recorders: train on uniformly random labels, then count how many of
//! them the model reproduces on its own training points.
//!
//! Trees are grown without a depth cap here; pass
//! [`ClassifierSpec::for_recorder`](crate::ClassifierSpec::for_recorder)
//! rather than the LDM configuration.

use crate::classifiers::{Learner, Model};
use crate::dataset::{random_labels, LabeledDataset};
use crate::error::{argument, Result};
use crate::seed::{self, role};
use alloc::format;
use alloc::vec::Vec;
use rand::Rng;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

/// Mean number of recovered labels over independent trials, with a
/// normal-approximation 95% confidence interval clamped to `[0, N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityEstimate {
    pub mean_recovered: f64,
    /// Sample standard deviation of the per-trial counts.
    pub std_dev: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: usize,
    pub dataset_size: usize,
    pub num_classes: usize,
}

impl CapacityEstimate {
    pub fn from_counts(counts: &[usize], dataset_size: usize, num_classes: usize) -> Result<Self> {
        let trials = counts.len();
        if trials < 2 {
            return Err(argument(format!("need at least 2 trials, got {trials}")));
        }
        if let Some(&c) = counts.iter().find(|&&c| c > dataset_size) {
            return Err(argument(format!(
                "count {c} exceeds the dataset size {dataset_size}"
            )));
        }
        let n = trials as f64;
        let mean = counts.iter().map(|&c| c as f64).sum::<f64>() / n;
        let ss: f64 = counts
            .iter()
            .map(|&c| (c as f64 - mean) * (c as f64 - mean))
            .sum();
        let std_dev = libm::sqrt(ss / (n - 1.0));
        let half = Z_95 * std_dev / libm::sqrt(n);
        let upper = dataset_size as f64;
        Ok(CapacityEstimate {
            mean_recovered: mean,
            std_dev,
            ci_low: (mean - half).clamp(0.0, upper),
            ci_high: (mean + half).clamp(0.0, upper),
            trials,
            dataset_size,
            num_classes,
        })
    }

    pub fn ci_width(&self) -> f64 {
        self.ci_high - self.ci_low
    }
}

/// Per-trial counts together with their summary.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityRun {
    pub estimate: CapacityEstimate,
    pub counts: Vec<usize>,
}

/// Expected recovery `N / C` of a model that stores nothing.
pub fn chance_baseline(dataset_size: usize, num_classes: usize) -> f64 {
    dataset_size as f64 / num_classes as f64
}

/// One recorder trial: relabel uniformly at random, fit, and count the
/// training points whose prediction matches the random label.
pub fn record_trial<L: Learner + ?Sized, R: Rng + ?Sized>(
    learner: &L,
    ds: &LabeledDataset,
    rng: &mut R,
) -> Result<usize> {
    let noisy = random_labels(ds, rng);
    let model = learner.fit(&noisy, rng)?;
    let mut recovered = 0;
    for (row, &label) in noisy.features().iter_rows().zip(noisy.labels()) {
        if model.predict(row)? == label {
            recovered += 1;
        }
    }
    Ok(recovered)
}

/// Seed of recorder trial `index`.
pub fn trial_seed(master_seed: u64, index: usize) -> u64 {
    seed::derive(master_seed, role::RECORDER_TRIAL, index as u64)
}

/// Runs trial `index` on its own derived stream.
pub fn run_trial<L: Learner + ?Sized>(
    learner: &L,
    ds: &LabeledDataset,
    master_seed: u64,
    index: usize,
) -> Result<usize> {
    let mut rng = seed::rng_from_seed(trial_seed(master_seed, index));
    record_trial(learner, ds, &mut rng)
}

pub fn estimate_capacity<L: Learner + ?Sized>(
    learner: &L,
    ds: &LabeledDataset,
    trials: usize,
    master_seed: u64,
) -> Result<CapacityRun> {
    if trials < 2 {
        return Err(argument(format!("need at least 2 trials, got {trials}")));
    }
    let counts = (0..trials)
        .map(|t| run_trial(learner, ds, master_seed, t))
        .collect::<Result<Vec<_>>>()?;
    let estimate = CapacityEstimate::from_counts(&counts, ds.len(), ds.num_classes())?;
    Ok(CapacityRun { estimate, counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baselines() {
        assert_eq!(chance_baseline(150, 3), 50.0);
        assert_eq!(chance_baseline(150, 2), 75.0);
        assert_eq!(chance_baseline(1, 2), 0.5);
    }

    #[test]
    fn summary_statistics() {
        let e = CapacityEstimate::from_counts(&[10, 12, 14, 16], 20, 2).unwrap();
        assert_eq!(e.mean_recovered, 13.0);
        let sd = (20.0f64 / 3.0).sqrt();
        assert!((e.std_dev - sd).abs() < 1e-12);
        assert!((e.ci_high - e.mean_recovered - 1.96 * sd / 2.0).abs() < 1e-12);
        assert_eq!(e.trials, 4);
    }

    #[test]
    fn constant_counts_have_zero_width() {
        let e = CapacityEstimate::from_counts(&[150, 150], 150, 3).unwrap();
        assert_eq!((e.std_dev, e.ci_low, e.ci_high), (0.0, 150.0, 150.0));
    }

    #[test]
    fn interval_is_clamped() {
        let e = CapacityEstimate::from_counts(&[0, 0, 0, 5], 5, 2).unwrap();
        assert_eq!(e.ci_low, 0.0);
        assert!(e.ci_low <= e.mean_recovered && e.mean_recovered <= e.ci_high);
        assert!(CapacityEstimate::from_counts(&[3], 5, 2).is_err());
        assert!(CapacityEstimate::from_counts(&[3, 6], 5, 2).is_err());
    }
}
