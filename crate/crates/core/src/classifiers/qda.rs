use super::{check_dim, softmax_present, ClassProbabilities, Model};
use crate::dataset::LabeledDataset;
use crate::error::Result;
use alloc::vec::Vec;

const COV_REGULARIZATION: f64 = 1e-6;

/// Quadratic discriminant analysis: one full-covariance Gaussian per class.
///
/// Each class covariance gets `1e-6 * trace / d` added to its diagonal. A
/// class whose covariance has zero trace (a single sample, or identical
/// samples) borrows the trace of the pooled training covariance instead.
#[derive(Debug, Clone, PartialEq)]
pub struct Qda {
    classes: Vec<Option<ClassGaussian>>,
    dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
struct ClassGaussian {
    mean: Vec<f64>,
    /// Lower-triangular Cholesky factor, row-major `d x d`.
    chol: Vec<f64>,
    log_det: f64,
    log_prior: f64,
}

fn mean_and_covariance(rows: &[&[f64]], dim: usize) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len();
    let mut mean = alloc::vec![0.0; dim];
    for r in rows {
        mean.iter_mut().zip(r.iter()).for_each(|(m, v)| *m += v);
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let mut cov = alloc::vec![0.0; dim * dim];
    if n < 2 {
        return (mean, cov);
    }
    for r in rows {
        for i in 0..dim {
            let di = r[i] - mean[i];
            for j in 0..=i {
                cov[i * dim + j] += di * (r[j] - mean[j]);
            }
        }
    }
    let denom = (n - 1) as f64;
    for i in 0..dim {
        for j in 0..=i {
            let v = cov[i * dim + j] / denom;
            cov[i * dim + j] = v;
            cov[j * dim + i] = v;
        }
    }
    (mean, cov)
}

fn trace(m: &[f64], dim: usize) -> f64 {
    (0..dim).map(|i| m[i * dim + i]).sum()
}

/// In-place Cholesky of a symmetric matrix; `None` if not positive definite.
fn cholesky(mut a: Vec<f64>, dim: usize) -> Option<Vec<f64>> {
    for j in 0..dim {
        let mut d = a[j * dim + j];
        for k in 0..j {
            d -= a[j * dim + k] * a[j * dim + k];
        }
        if !(d > 0.0) || !d.is_finite() {
            return None;
        }
        let d = libm::sqrt(d);
        a[j * dim + j] = d;
        for i in j + 1..dim {
            let mut s = a[i * dim + j];
            for k in 0..j {
                s -= a[i * dim + k] * a[j * dim + k];
            }
            a[i * dim + j] = s / d;
        }
        for k in j + 1..dim {
            a[j * dim + k] = 0.0;
        }
    }
    Some(a)
}

impl Qda {
    pub fn fit(train: &LabeledDataset) -> Self {
        let dim = train.dim();
        let all: Vec<&[f64]> = train.features().iter_rows().collect();
        let (_, pooled) = mean_and_covariance(&all, dim);
        let pooled_scale = trace(&pooled, dim) / dim as f64;

        let mut by_class: Vec<Vec<&[f64]>> = alloc::vec![Vec::new(); train.num_classes()];
        for (row, &l) in all.iter().zip(train.labels()) {
            by_class[l].push(row);
        }
        let n = train.len() as f64;
        let classes = by_class
            .iter()
            .map(|rows| {
                if rows.is_empty() {
                    return None;
                }
                let (mean, cov) = mean_and_covariance(rows, dim);
                let mut scale = trace(&cov, dim) / dim as f64;
                if !(scale > 0.0) {
                    scale = if pooled_scale > 0.0 {
                        pooled_scale
                    } else {
                        1.0
                    };
                }
                let mut ridge = COV_REGULARIZATION * scale;
                let chol = loop {
                    let mut reg = cov.clone();
                    for i in 0..dim {
                        reg[i * dim + i] += ridge;
                    }
                    if let Some(l) = cholesky(reg, dim) {
                        break l;
                    }
                    ridge *= 10.0;
                };
                let log_det = 2.0 * (0..dim).map(|i| libm::log(chol[i * dim + i])).sum::<f64>();
                Some(ClassGaussian {
                    mean,
                    chol,
                    log_det,
                    log_prior: libm::log(rows.len() as f64 / n),
                })
            })
            .collect();
        Qda { classes, dim }
    }
}

impl ClassGaussian {
    fn log_density(&self, x: &[f64], dim: usize, buf: &mut [f64]) -> f64 {
        // forward substitution L z = x - mean; Mahalanobis distance is |z|^2
        for i in 0..dim {
            let mut s = x[i] - self.mean[i];
            #[allow(clippy::needless_range_loop)]
            for k in 0..i {
                s -= self.chol[i * dim + k] * buf[k];
            }
            buf[i] = s / self.chol[i * dim + i];
        }
        let maha: f64 = buf.iter().map(|z| z * z).sum();
        self.log_prior - 0.5 * (self.log_det + maha)
    }
}

impl Model for Qda {
    fn num_classes(&self) -> usize {
        self.classes.len()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn predict_proba(&self, x: &[f64]) -> Result<ClassProbabilities> {
        check_dim(self.dim, x)?;
        let mut buf = alloc::vec![0.0; self.dim];
        let scores: Vec<f64> = self
            .classes
            .iter()
            .map(|g| match g {
                Some(g) => g.log_density(x, self.dim, &mut buf),
                None => f64::NEG_INFINITY,
            })
            .collect();
        let present: Vec<bool> = self.classes.iter().map(Option::is_some).collect();
        Ok(softmax_present(&scores, &present))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Features;
    use alloc::vec;

    #[test]
    fn cholesky_reconstructs() {
        let a = vec![4.0, 2.0, 2.0, 3.0];
        let l = cholesky(a, 2).unwrap();
        assert_eq!(l[1], 0.0);
        assert!((l[0] * l[0] - 4.0).abs() < 1e-12);
        assert!((l[2] * l[0] - 2.0).abs() < 1e-12);
        assert!((l[2] * l[2] + l[3] * l[3] - 3.0).abs() < 1e-12);
        assert!(cholesky(vec![1.0, 2.0, 2.0, 1.0], 2).is_none());
    }

    #[test]
    fn separates_gaussian_blobs() {
        let rows = [
            [0.0, 0.1],
            [0.2, -0.1],
            [-0.1, 0.0],
            [5.0, 5.1],
            [5.2, 4.9],
            [4.9, 5.0],
        ];
        let ds = LabeledDataset::new(
            Features::from_rows(&rows).unwrap(),
            vec![0, 0, 0, 1, 1, 1],
            2,
        )
        .unwrap();
        let m = Qda::fit(&ds);
        assert_eq!(m.predict(&[0.0, 0.0]).unwrap(), 0);
        assert_eq!(m.predict(&[5.0, 5.0]).unwrap(), 1);
    }

    #[test]
    fn degenerate_classes_do_not_crash() {
        // class 1 has one sample, class 2 none
        let rows = [[0.0, 0.0], [1.0, 0.5], [0.3, 0.9], [3.0, 3.0]];
        let ds =
            LabeledDataset::new(Features::from_rows(&rows).unwrap(), vec![0, 0, 0, 1], 3).unwrap();
        let m = Qda::fit(&ds);
        for q in [[0.0, 0.0], [3.0, 3.0], [100.0, -40.0]] {
            let p = m.predict_proba(&q).unwrap();
            assert_eq!(p.probs()[2], 0.0);
            assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert_eq!(m.predict(&[3.0, 3.0]).unwrap(), 1);
    }
}
