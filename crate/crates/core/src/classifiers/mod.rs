//! Probabilistic classifiers sharing a fit / predict-probabilities contract.
//!
//! Every family is implemented from scratch: k-nearest neighbors, Gaussian
//! naive Bayes, CART decision trees, random forests, quadratic discriminant
//! analysis and SAMME AdaBoost over decision stumps.

mod adaboost;
mod knn;
mod naive_bayes;
mod qda;
mod spec;
mod tree;

pub use adaboost::AdaBoost;
pub use knn::Knn;
pub use naive_bayes::GaussianNb;
pub use qda::Qda;
pub use spec::{ClassifierSpec, Depth};
pub use tree::{DecisionTree, RandomForest};

use crate::dataset::LabeledDataset;
use crate::error::{argument, Result};
use alloc::format;
use alloc::vec::Vec;
use rand::Rng;

/// A probability distribution over `C` classes.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassProbabilities(Vec<f64>);

impl ClassProbabilities {
    pub const SUM_TOLERANCE: f64 = 1e-9;

    /// Validates that `probs` lies on the simplex.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(argument("class probabilities cannot be empty"));
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(argument(format!("probability {p} outside [0, 1]")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(argument(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(ClassProbabilities(probs))
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn num_classes(&self) -> usize {
        self.0.len()
    }

    /// Index of the largest probability; ties go to the lowest index.
    pub fn argmax(&self) -> usize {
        argmax(&self.0)
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// A trained classifier.
pub trait Model {
    fn num_classes(&self) -> usize;

    /// Feature dimension seen during training.
    fn dim(&self) -> usize;

    fn predict_proba(&self, x: &[f64]) -> Result<ClassProbabilities>;

    fn predict(&self, x: &[f64]) -> Result<usize> {
        Ok(self.predict_proba(x)?.argmax())
    }
}

/// Something that can be trained on a labeled dataset.
///
/// Stochastic learners draw from `rng`; deterministic ones ignore it.
pub trait Learner {
    type Model: Model;

    fn fit<R: Rng + ?Sized>(&self, train: &LabeledDataset, rng: &mut R) -> Result<Self::Model>;
}

pub(crate) fn check_dim(expected: usize, x: &[f64]) -> Result<()> {
    if x.len() == expected {
        Ok(())
    } else {
        Err(argument(format!(
            "query has {} features, model was trained on {expected}",
            x.len()
        )))
    }
}

/// Turns per-class log scores into probabilities.
///
/// Classes absent from training (`present[c] == false`) get probability 0.
/// If no present class has a finite score the result is uniform over the
/// present classes.
pub(crate) fn softmax_present(log_scores: &[f64], present: &[bool]) -> ClassProbabilities {
    let max = log_scores
        .iter()
        .zip(present)
        .filter(|(s, &p)| p && s.is_finite())
        .map(|(s, _)| *s)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut probs: Vec<f64> = log_scores
        .iter()
        .zip(present)
        .map(|(&s, &p)| {
            if p && max.is_finite() && s.is_finite() {
                libm::exp(s - max)
            } else {
                0.0
            }
        })
        .collect();
    normalize_or_uniform(&mut probs, present);
    ClassProbabilities(probs)
}

/// Scales nonnegative weights to sum 1, falling back to uniform over the
/// present classes when all mass vanished.
pub(crate) fn normalize_or_uniform(weights: &mut [f64], present: &[bool]) {
    let total: f64 = weights.iter().sum();
    if total > 0.0 && total.is_finite() {
        weights.iter_mut().for_each(|w| *w /= total);
        return;
    }
    let n_present = present.iter().filter(|&&p| p).count();
    for (w, &p) in weights.iter_mut().zip(present) {
        *w = if n_present == 0 {
            1.0 / present.len() as f64
        } else if p {
            1.0 / n_present as f64
        } else {
            0.0
        };
    }
}

/// A model produced by fitting a [`ClassifierSpec`].
#[derive(Debug, Clone, PartialEq)]
pub enum TrainedModel {
    Knn(Knn),
    GaussianNb(GaussianNb),
    DecisionTree(DecisionTree),
    RandomForest(RandomForest),
    Qda(Qda),
    AdaBoost(AdaBoost),
}

macro_rules! delegate {
    ($self:ident, $m:ident => $body:expr) => {
        match $self {
            TrainedModel::Knn($m) => $body,
            TrainedModel::GaussianNb($m) => $body,
            TrainedModel::DecisionTree($m) => $body,
            TrainedModel::RandomForest($m) => $body,
            TrainedModel::Qda($m) => $body,
            TrainedModel::AdaBoost($m) => $body,
        }
    };
}

impl Model for TrainedModel {
    fn num_classes(&self) -> usize {
        delegate!(self, m => m.num_classes())
    }

    fn dim(&self) -> usize {
        delegate!(self, m => m.dim())
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ClassProbabilities> {
        delegate!(self, m => m.predict_proba(x))
    }
}

impl Learner for ClassifierSpec {
    type Model = TrainedModel;

    fn fit<R: Rng + ?Sized>(&self, train: &LabeledDataset, rng: &mut R) -> Result<TrainedModel> {
        self.validate()?;
        let model = match *self {
            ClassifierSpec::Knn { k } => TrainedModel::Knn(Knn::fit(train, k)),
            ClassifierSpec::GaussianNb => TrainedModel::GaussianNb(GaussianNb::fit(train)),
            ClassifierSpec::DecisionTree { max_depth } => {
                TrainedModel::DecisionTree(DecisionTree::fit(train, max_depth.resolve()))
            }
            ClassifierSpec::RandomForest {
                n_estimators,
                max_features,
                max_depth,
            } => TrainedModel::RandomForest(RandomForest::fit(
                train,
                n_estimators,
                max_features,
                max_depth.resolve(),
                rng,
            )),
            ClassifierSpec::Qda => TrainedModel::Qda(Qda::fit(train)),
            ClassifierSpec::AdaBoost { rounds } => {
                TrainedModel::AdaBoost(AdaBoost::fit(train, rounds))
            }
        };
        Ok(model)
    }
}
