use super::{check_dim, ClassProbabilities, Model};
use crate::dataset::{Features, LabeledDataset};
use crate::error::Result;
use alloc::vec::Vec;

/// k-nearest neighbors under Euclidean distance.
///
/// The probability of a class is the fraction of the `k` nearest training
/// points carrying it. Equidistant neighbors are ranked by training-row
/// index, lowest first. `k` larger than the training set uses every point.
#[derive(Debug, Clone, PartialEq)]
pub struct Knn {
    k: usize,
    features: Features,
    labels: Vec<usize>,
    num_classes: usize,
}

impl Knn {
    pub fn fit(train: &LabeledDataset, k: usize) -> Self {
        Knn {
            k: k.max(1),
            features: train.features().clone(),
            labels: train.labels().to_vec(),
            num_classes: train.num_classes(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Training-row indices of the neighbors of `x`, nearest first.
    pub fn neighbors(&self, x: &[f64]) -> Result<Vec<usize>> {
        check_dim(self.features.cols(), x)?;
        let mut dists: Vec<(f64, usize)> = self
            .features
            .iter_rows()
            .enumerate()
            .map(|(i, row)| {
                let d: f64 = row.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
                (d, i)
            })
            .collect();
        let k = self.k.min(dists.len());
        let by_distance =
            |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if k < dists.len() {
            dists.select_nth_unstable_by(k - 1, by_distance);
            dists.truncate(k);
        }
        dists.sort_unstable_by(by_distance);
        Ok(dists.into_iter().map(|(_, i)| i).collect())
    }
}

impl Model for Knn {
    fn num_classes(&self) -> usize {
        self.num_classes
    }

    fn dim(&self) -> usize {
        self.features.cols()
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ClassProbabilities> {
        let neighbors = self.neighbors(x)?;
        let mut probs = alloc::vec![0.0; self.num_classes];
        for &i in &neighbors {
            probs[self.labels[i]] += 1.0;
        }
        let k = neighbors.len() as f64;
        probs.iter_mut().for_each(|p| *p /= k);
        Ok(ClassProbabilities(probs))
    }
}
