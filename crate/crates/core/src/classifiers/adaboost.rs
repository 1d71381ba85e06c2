use super::tree::{DecisionTree, Grower};
use super::{check_dim, normalize_or_uniform, ClassProbabilities, Model};
use crate::dataset::LabeledDataset;
use crate::error::Result;
use alloc::vec::Vec;

/// Multi-class AdaBoost (SAMME) over depth-1 decision stumps.
///
/// Class probabilities are a softmax of the symmetric SAMME vote: a stump
/// voting for class `k` adds its weight to `k` and subtracts
/// `weight / (C - 1)` from every other class. Votes are divided by the total
/// stump weight and by `C - 1` before exponentiation.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaBoost {
    stumps: Vec<(DecisionTree, f64)>,
    /// Training class frequencies, used when no stump was accepted.
    prior: Vec<f64>,
    num_classes: usize,
    dim: usize,
}

impl AdaBoost {
    pub fn fit(train: &LabeledDataset, rounds: usize) -> Self {
        let n = train.len();
        let c = train.num_classes();
        let mut weights = alloc::vec![1.0 / n as f64; n];
        let mut stumps = Vec::new();
        for _ in 0..rounds {
            let stump = Grower {
                features: train.features(),
                labels: train.labels(),
                weights: &weights,
                num_classes: c,
                max_depth: Some(1),
                feature_sampling: None,
            }
            .grow();
            let wrong: Vec<bool> = train
                .features()
                .iter_rows()
                .zip(train.labels())
                .map(|(row, &y)| stump.predict(row) != Ok(y))
                .collect();
            let total: f64 = weights.iter().sum();
            let error: f64 = weights
                .iter()
                .zip(&wrong)
                .filter(|(_, &w)| w)
                .map(|(x, _)| x)
                .sum::<f64>()
                / total;
            if error <= 0.0 {
                stumps.push((stump, 1.0));
                break;
            }
            // no better than chance: further rounds cannot help
            if error >= 1.0 - 1.0 / c as f64 - 1e-12 {
                break;
            }
            let alpha = libm::log((1.0 - error) / error) + libm::log((c - 1) as f64);
            let boost = libm::exp(alpha);
            for (w, &bad) in weights.iter_mut().zip(&wrong) {
                if bad {
                    *w *= boost;
                }
            }
            let sum: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= sum);
            stumps.push((stump, alpha));
        }
        let mut prior: Vec<f64> = train.class_counts().iter().map(|&k| k as f64).collect();
        prior.iter_mut().for_each(|p| *p /= n as f64);
        AdaBoost {
            stumps,
            prior,
            num_classes: c,
            dim: train.dim(),
        }
    }

    pub fn rounds_used(&self) -> usize {
        self.stumps.len()
    }
}

impl Model for AdaBoost {
    fn num_classes(&self) -> usize {
        self.num_classes
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ClassProbabilities> {
        check_dim(self.dim, x)?;
        if self.stumps.is_empty() {
            return Ok(ClassProbabilities(self.prior.clone()));
        }
        let c = self.num_classes;
        let off = -1.0 / (c - 1) as f64;
        let mut votes = alloc::vec![0.0; c];
        let mut total_alpha = 0.0;
        for (stump, alpha) in &self.stumps {
            let k = stump.predict(x)?;
            for (j, v) in votes.iter_mut().enumerate() {
                *v += alpha * if j == k { 1.0 } else { off };
            }
            total_alpha += alpha;
        }
        let scale = 1.0 / (total_alpha * (c - 1) as f64);
        let max = votes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut probs: Vec<f64> = votes.iter().map(|v| libm::exp((v - max) * scale)).collect();
        let present = alloc::vec![true; c];
        normalize_or_uniform(&mut probs, &present);
        Ok(ClassProbabilities(probs))
    }
}
