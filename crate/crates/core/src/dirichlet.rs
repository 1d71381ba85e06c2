//! Dirichlet maximum-likelihood fitting and differential entropy.

use crate::error::{argument, Error, Result};
use crate::ldm::LDMatrix;
use crate::special::{digamma_unchecked, inverse_digamma, lgamma_unchecked};
use alloc::format;
use alloc::vec::Vec;
use rand::Rng;
use rand_distr::{Distribution, Gamma};

pub const DEFAULT_TOLERANCE: f64 = 1e-7;
pub const DEFAULT_MAX_ITER: usize = 1000;

/// Concentration parameters of a Dirichlet distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct DirichletParams {
    alpha: Vec<f64>,
}

impl DirichletParams {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.len() < 2 {
            return Err(argument("a Dirichlet needs at least 2 components"));
        }
        if let Some(a) = alpha.iter().find(|a| !(**a > 0.0) || !a.is_finite()) {
            return Err(Error::Domain(format!(
                "Dirichlet parameters must be finite and positive, got {a}"
            )));
        }
        Ok(DirichletParams { alpha })
    }

    /// `m` copies of `value`.
    pub fn symmetric(m: usize, value: f64) -> Result<Self> {
        Self::new(alloc::vec![value; m])
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn concentration(&self) -> f64 {
        self.alpha.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.alpha
    }
}

/// Outcome of [`fit_dirichlet`].
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub params: DirichletParams,
    pub iterations: usize,
    pub converged: bool,
    /// Largest absolute parameter change in the last iteration.
    pub final_delta: f64,
}

impl FitReport {
    pub fn entropy(&self) -> f64 {
        dirichlet_entropy(&self.params)
    }
}

/// Differential entropy (nats) of a Dirichlet distribution:
/// `ln B(a) + (a0 - m) psi(a0) - sum_j (a_j - 1) psi(a_j)`. It is negative
/// whenever the distribution is more concentrated than uniform.
pub fn dirichlet_entropy(params: &DirichletParams) -> f64 {
    let alpha = params.alpha();
    let m = alpha.len() as f64;
    let a0 = params.concentration();
    let ln_beta: f64 =
        alpha.iter().map(|&a| lgamma_unchecked(a)).sum::<f64>() - lgamma_unchecked(a0);
    let tail: f64 = alpha
        .iter()
        .map(|&a| (a - 1.0) * digamma_unchecked(a))
        .sum();
    ln_beta + (a0 - m) * digamma_unchecked(a0) - tail
}

/// Draws one point of the simplex: independent `Gamma(a_j, 1)` variates
/// divided by their sum.
pub fn sample_dirichlet<R: Rng + ?Sized>(params: &DirichletParams, rng: &mut R) -> Vec<f64> {
    let gammas: Vec<Gamma<f64>> = params
        .alpha()
        .iter()
        .map(|&a| Gamma::new(a, 1.0).expect("validated shape"))
        .collect();
    loop {
        let mut draw: Vec<f64> = gammas.iter().map(|g| g.sample(rng)).collect();
        let sum: f64 = draw.iter().sum();
        // all draws can underflow for tiny shapes
        if sum > 0.0 && sum.is_finite() {
            draw.iter_mut().for_each(|x| *x /= sum);
            return draw;
        }
    }
}

/// Sum in ascending order, so the result does not depend on input order.
fn ordered_sum(values: &mut [f64]) -> f64 {
    values.sort_unstable_by(f64::total_cmp);
    values.iter().sum()
}

/// Average log-density of the samples under `Dir(a0 * mean)`, from the
/// per-component means of `ln p`.
fn mean_log_likelihood(mean: &[f64], mean_log: &[f64], a0: f64) -> f64 {
    let body: f64 = mean
        .iter()
        .zip(mean_log)
        .map(|(&mu, &ml)| {
            let a = a0 * mu;
            (a - 1.0) * ml - lgamma_unchecked(a)
        })
        .sum();
    lgamma_unchecked(a0) + body
}

/// Maximum-likelihood Dirichlet fit to `K >= 2` columns on the simplex.
///
/// Uses the fixed-point iteration
/// `psi(a_j') = psi(sum_k a_k) + mean_i ln p_ij`. The start keeps the sample
/// means and takes whichever total concentration (moment matching, the
/// log-mean approximation, or the component count) has the highest
/// likelihood.
/// Iteration stops once the largest parameter change is at most
/// `tolerance`, or after `max_iter` steps with `converged = false`.
/// Entries must be strictly positive; smooth zeros away first.
pub fn fit_dirichlet<C: AsRef<[f64]>>(
    columns: &[C],
    tolerance: f64,
    max_iter: usize,
) -> Result<FitReport> {
    let k = columns.len();
    if k < 2 {
        return Err(argument(format!(
            "Dirichlet fitting needs at least 2 samples, got {k}"
        )));
    }
    let m = columns[0].as_ref().len();
    if m < 2 {
        return Err(argument("samples need at least 2 components"));
    }
    for (i, col) in columns.iter().enumerate() {
        let col = col.as_ref();
        if col.len() != m {
            return Err(argument(format!(
                "sample {i} has {} components, expected {m}",
                col.len()
            )));
        }
        if let Some(p) = col.iter().find(|p| !(**p > 0.0) || !p.is_finite()) {
            return Err(Error::Domain(format!(
                "sample {i} has entry {p}; every entry must be positive (apply smoothing first)"
            )));
        }
        let sum: f64 = col.iter().sum();
        if (sum - 1.0).abs() > 1e-6 {
            return Err(argument(format!("sample {i} sums to {sum}, not 1")));
        }
    }

    let kf = k as f64;
    let mut buf = alloc::vec![0.0; k];
    let mut mean_log = Vec::with_capacity(m);
    let mut mean = Vec::with_capacity(m);
    for j in 0..m {
        buf.iter_mut()
            .zip(columns)
            .for_each(|(b, c)| *b = libm::log(c.as_ref()[j]));
        mean_log.push(ordered_sum(&mut buf) / kf);
        buf.iter_mut()
            .zip(columns)
            .for_each(|(b, c)| *b = c.as_ref()[j]);
        mean.push(ordered_sum(&mut buf) / kf);
    }
    // moment matching: Var[p_j] = E[p_j](1 - E[p_j]) / (a0 + 1) gives one
    // estimate of a0 per component; combine them by their geometric mean
    let mut log_a0 = Vec::with_capacity(m);
    for (j, &mu) in mean.iter().enumerate() {
        buf.iter_mut()
            .zip(columns)
            .for_each(|(b, c)| *b = c.as_ref()[j] * c.as_ref()[j]);
        let second = ordered_sum(&mut buf) / kf;
        let estimate = (mu - second) / (second - mu * mu);
        if estimate > 0.0 && estimate.is_finite() {
            log_a0.push(libm::log(estimate));
        }
    }
    let moment = if log_a0.is_empty() {
        m as f64
    } else {
        libm::exp(log_a0.iter().sum::<f64>() / log_a0.len() as f64)
    };
    // with the mean held fixed the log-likelihood is approximately
    // maximized at a0 = (m - 1) / (2 sum_j E[p_j] (ln E[p_j] - mean ln p_j)).
    // Moment matching collapses towards 0 on near one-hot data even when
    // floored entries keep the maximum far from it, so keep the better start.
    let gap: f64 = mean
        .iter()
        .zip(&mean_log)
        .map(|(&mu, &ml)| mu * (libm::log(mu) - ml))
        .sum();
    let log_mean = (m as f64 - 1.0) / (2.0 * gap);
    let mut a0 = moment;
    for candidate in [m as f64, log_mean] {
        if candidate > 0.0
            && candidate.is_finite()
            && (!(a0 > 0.0)
                || !a0.is_finite()
                || mean_log_likelihood(&mean, &mean_log, candidate)
                    > mean_log_likelihood(&mean, &mean_log, a0))
        {
            a0 = candidate;
        }
    }
    let mut alpha: Vec<f64> = mean.iter().map(|p| p * a0).collect();
    let mut next = alloc::vec![0.0; m];

    let mut final_delta = f64::INFINITY;
    for iteration in 1..=max_iter {
        let psi_total = digamma_unchecked(alpha.iter().sum());
        let mut delta: f64 = 0.0;
        for ((n, a), ml) in next.iter_mut().zip(&alpha).zip(&mean_log) {
            *n = inverse_digamma(psi_total + ml);
            if !(*n > 0.0) || !n.is_finite() {
                return Err(Error::NumericalFailure {
                    iteration,
                    detail: format!("parameter update produced {n}"),
                });
            }
            delta = delta.max((*n - a).abs());
        }
        core::mem::swap(&mut alpha, &mut next);
        final_delta = delta;
        if delta <= tolerance {
            return Ok(FitReport {
                params: DirichletParams { alpha },
                iterations: iteration,
                converged: true,
                final_delta,
            });
        }
    }
    Ok(FitReport {
        params: DirichletParams { alpha },
        iterations: max_iter,
        converged: false,
        final_delta,
    })
}

/// Fits the columns of an LDM with the default tolerance and iteration cap.
pub fn fit_ldm(ldm: &LDMatrix) -> Result<FitReport> {
    let columns: Vec<&[f64]> = ldm.columns().iter().map(|c| c.probs()).collect();
    fit_dirichlet(&columns, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;
    use alloc::vec;

    #[test]
    fn uniform_entropies() {
        let h = dirichlet_entropy(&DirichletParams::symmetric(2, 1.0).unwrap());
        assert!(h.abs() < 1e-12);
        let h = dirichlet_entropy(&DirichletParams::symmetric(3, 1.0).unwrap());
        assert!((h + core::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn beta_two_two_entropy_matches_quadrature() {
        // -int f ln f for f(t) = 6 t (1 - t); t = sin^2(u) smooths the endpoints,
        // then composite Simpson on [0, pi/2]
        let n = 20_000;
        let h = core::f64::consts::FRAC_PI_2 / n as f64;
        let g = |u: f64| {
            let (s, c) = (u.sin(), u.cos());
            let t = s * s;
            let f = 6.0 * t * (1.0 - t);
            if f > 0.0 {
                -f * f.ln() * 2.0 * s * c
            } else {
                0.0
            }
        };
        let mut s = g(0.0) + g(core::f64::consts::FRAC_PI_2);
        for i in 1..n {
            s += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let quad = s * h / 3.0;
        let closed = dirichlet_entropy(&DirichletParams::new(vec![2.0, 2.0]).unwrap());
        assert!((quad - closed).abs() < 1e-12, "{quad} vs {closed}");
        assert!((closed + 0.1251).abs() < 1e-4);
    }

    #[test]
    fn params_validation() {
        assert!(DirichletParams::new(vec![1.0]).is_err());
        assert!(DirichletParams::new(vec![1.0, 0.0]).is_err());
        assert!(DirichletParams::new(vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn samples_lie_on_the_simplex() {
        let p = DirichletParams::new(vec![0.3, 2.0, 7.5]).unwrap();
        let mut rng = rng_from_seed(1);
        for _ in 0..1000 {
            let x = sample_dirichlet(&p, &mut rng);
            assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(x.iter().all(|&v| v >= 0.0));
        }
    }

    #[test]
    fn sample_means() {
        let mut rng = rng_from_seed(2);
        for (alpha, expected) in [(vec![1.0, 1.0], 0.5), (vec![2.0, 6.0], 0.25)] {
            let p = DirichletParams::new(alpha).unwrap();
            let mean = (0..10_000)
                .map(|_| sample_dirichlet(&p, &mut rng)[0])
                .sum::<f64>()
                / 10_000.0;
            assert!((mean - expected).abs() < 0.01, "{mean} vs {expected}");
        }
    }

    #[test]
    fn identical_columns_do_not_converge() {
        let cols = vec![[0.5, 0.5]; 10];
        let report = fit_dirichlet(&cols, DEFAULT_TOLERANCE, 200).unwrap();
        assert!(!report.converged);
        assert_eq!(report.iterations, 200);
        assert!(report.final_delta > DEFAULT_TOLERANCE);
        assert!(report
            .params
            .alpha()
            .iter()
            .all(|a| a.is_finite() && *a > 0.0));
    }

    #[test]
    fn rejects_unsmoothed_or_malformed_input() {
        let zero = [vec![1.0, 0.0], vec![0.5, 0.5]];
        assert!(matches!(
            fit_dirichlet(&zero, 1e-7, 10),
            Err(Error::Domain(_))
        ));
        assert!(fit_dirichlet(&[vec![0.5, 0.5]], 1e-7, 10).is_err());
        assert!(fit_dirichlet(&[vec![0.5, 0.6], vec![0.5, 0.5]], 1e-7, 10).is_err());
        assert!(fit_dirichlet(&[vec![0.5, 0.5], vec![0.2, 0.3, 0.5]], 1e-7, 10).is_err());
    }
}
