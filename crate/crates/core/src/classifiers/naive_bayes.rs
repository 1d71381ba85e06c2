use super::{check_dim, softmax_present, ClassProbabilities, Model};
use crate::dataset::LabeledDataset;
use crate::error::Result;
use alloc::vec::Vec;

const VAR_SMOOTHING: f64 = 1e-9;
const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Gaussian naive Bayes with per-class, per-feature variances.
///
/// Every variance is inflated by `1e-9` times the largest feature variance
/// of the whole training set. Classes absent from training get prior 0.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianNb {
    means: Vec<Vec<f64>>,
    variances: Vec<Vec<f64>>,
    log_priors: Vec<f64>,
    present: Vec<bool>,
    dim: usize,
}

fn mean_var(rows: &[&[f64]], dim: usize) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len() as f64;
    let mut mean = alloc::vec![0.0; dim];
    for r in rows {
        mean.iter_mut().zip(r.iter()).for_each(|(m, v)| *m += v);
    }
    mean.iter_mut().for_each(|m| *m /= n);
    let mut var = alloc::vec![0.0; dim];
    for r in rows {
        for ((s, v), m) in var.iter_mut().zip(r.iter()).zip(&mean) {
            *s += (v - m) * (v - m);
        }
    }
    var.iter_mut().for_each(|s| *s /= n);
    (mean, var)
}

impl GaussianNb {
    pub fn fit(train: &LabeledDataset) -> Self {
        let dim = train.dim();
        let c = train.num_classes();
        let all: Vec<&[f64]> = train.features().iter_rows().collect();
        let (_, total_var) = mean_var(&all, dim);
        let max_var = total_var.iter().copied().fold(0.0, f64::max);
        let epsilon = if max_var > 0.0 {
            VAR_SMOOTHING * max_var
        } else {
            VAR_SMOOTHING
        };

        let mut by_class: Vec<Vec<&[f64]>> = alloc::vec![Vec::new(); c];
        for (row, &l) in all.iter().zip(train.labels()) {
            by_class[l].push(row);
        }
        let n = train.len() as f64;
        let mut means = Vec::with_capacity(c);
        let mut variances = Vec::with_capacity(c);
        let mut log_priors = Vec::with_capacity(c);
        let mut present = Vec::with_capacity(c);
        for rows in &by_class {
            if rows.is_empty() {
                means.push(alloc::vec![0.0; dim]);
                variances.push(alloc::vec![1.0; dim]);
                log_priors.push(f64::NEG_INFINITY);
                present.push(false);
                continue;
            }
            let (m, mut v) = mean_var(rows, dim);
            v.iter_mut().for_each(|s| *s += epsilon);
            means.push(m);
            variances.push(v);
            log_priors.push(libm::log(rows.len() as f64 / n));
            present.push(true);
        }
        GaussianNb {
            means,
            variances,
            log_priors,
            present,
            dim,
        }
    }
}

impl Model for GaussianNb {
    fn num_classes(&self) -> usize {
        self.log_priors.len()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ClassProbabilities> {
        check_dim(self.dim, x)?;
        let scores: Vec<f64> = (0..self.num_classes())
            .map(|c| {
                if !self.present[c] {
                    return f64::NEG_INFINITY;
                }
                let ll: f64 = x
                    .iter()
                    .zip(&self.means[c])
                    .zip(&self.variances[c])
                    .map(|((v, m), s)| LN_2PI + libm::log(*s) + (v - m) * (v - m) / s)
                    .sum();
                self.log_priors[c] - 0.5 * ll
            })
            .collect();
        Ok(softmax_present(&scores, &self.present))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Features;
    use alloc::vec;

    #[test]
    fn symmetric_classes_give_uniform_posterior() {
        let ds = LabeledDataset::new(
            Features::from_rows(&[[-2.0], [-1.0], [1.0], [2.0]]).unwrap(),
            vec![0, 0, 1, 1],
            2,
        )
        .unwrap();
        let p = GaussianNb::fit(&ds).predict_proba(&[0.0]).unwrap();
        assert!((p.probs()[0] - 0.5).abs() < 1e-12);
        assert!((p.probs()[1] - 0.5).abs() < 1e-12);
        let p = GaussianNb::fit(&ds).predict_proba(&[-1.5]).unwrap();
        assert!(p.probs()[0] > 0.99);
    }

    #[test]
    fn absent_class_gets_zero() {
        let ds = LabeledDataset::new(
            Features::from_rows(&[[0.0], [1.0], [5.0]]).unwrap(),
            vec![0, 0, 2],
            3,
        )
        .unwrap();
        let p = GaussianNb::fit(&ds).predict_proba(&[0.5]).unwrap();
        assert_eq!(p.probs()[1], 0.0);
        assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_features_fall_back_to_uniform_far_away() {
        let ds = LabeledDataset::new(
            Features::from_rows(&[[1.0], [1.0], [1.0]]).unwrap(),
            vec![0, 1, 1],
            3,
        )
        .unwrap();
        let m = GaussianNb::fit(&ds);
        let p = m.predict_proba(&[1e200]).unwrap();
        assert_eq!(p.probs(), &[0.5, 0.5, 0.0]);
        let p = m.predict_proba(&[1.0]).unwrap();
        assert!((p.probs()[1] - 2.0 / 3.0).abs() < 1e-12);
    }
}
