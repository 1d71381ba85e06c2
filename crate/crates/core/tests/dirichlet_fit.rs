use ldm_core::dirichlet::{
    dirichlet_entropy, fit_dirichlet, sample_dirichlet, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE,
};
use ldm_core::seed::rng_from_seed;
use ldm_core::special::digamma;
use ldm_core::DirichletParams;
use rand::seq::SliceRandom;

fn draws(alpha: &[f64], k: usize, seed: u64) -> Vec<Vec<f64>> {
    let params = DirichletParams::new(alpha.to_vec()).unwrap();
    let mut rng = rng_from_seed(seed);
    (0..k)
        .map(|_| sample_dirichlet(&params, &mut rng))
        .collect()
}

fn max_relative_error(fitted: &[f64], truth: &[f64]) -> f64 {
    fitted
        .iter()
        .zip(truth)
        .map(|(f, t)| ((f - t) / t).abs())
        .fold(0.0, f64::max)
}

#[test]
fn recovers_known_parameters() {
    for (alpha, seed) in [(vec![2.0, 5.0], 1), (vec![1.0, 1.0, 1.0], 2)] {
        let samples = draws(&alpha, 10_000, seed);
        let report = fit_dirichlet(&samples, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
        assert!(report.converged);
        let err = max_relative_error(report.params.alpha(), &alpha);
        assert!(
            err < 0.05,
            "alpha {alpha:?}: fitted {:?}",
            report.params.alpha()
        );
    }
}

#[test]
fn error_shrinks_with_more_samples() {
    let truth = [0.7, 2.0, 4.5];
    // average over a few replicates to keep the comparison stable
    let mean_error = |k: usize| {
        (0..5)
            .map(|rep| {
                let samples = draws(&truth, k, 100 + rep + k as u64);
                let report = fit_dirichlet(&samples, 1e-9, 5000).unwrap();
                max_relative_error(report.params.alpha(), &truth)
            })
            .sum::<f64>()
            / 5.0
    };
    let (e100, e1000, e10000) = (mean_error(100), mean_error(1000), mean_error(10_000));
    assert!(e100 > e1000 && e1000 > e10000, "{e100} {e1000} {e10000}");
}

#[test]
fn column_order_does_not_matter() {
    let mut samples = draws(&[0.4, 1.3, 2.2, 0.9], 500, 9);
    let a = fit_dirichlet(&samples, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
    samples.shuffle(&mut rng_from_seed(10));
    let b = fit_dirichlet(&samples, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
    for (x, y) in a.params.alpha().iter().zip(b.params.alpha()) {
        assert!((x - y).abs() <= 1e-12);
    }
    assert_eq!(a.iterations, b.iterations);
}

#[test]
fn uniform_entropy_closed_form() {
    let mut log_factorial = 0.0f64;
    for m in 2..=6usize {
        log_factorial += ((m - 1) as f64).ln();
        let h = dirichlet_entropy(&DirichletParams::symmetric(m, 1.0).unwrap());
        assert!((h + log_factorial).abs() < 1e-9, "m = {m}: {h}");
    }
}

#[test]
fn symmetric_entropy_peaks_at_one() {
    let scan = [0.2, 0.5, 1.0, 2.0, 5.0];
    let entropies: Vec<f64> = scan
        .iter()
        .map(|&a| dirichlet_entropy(&DirichletParams::symmetric(3, a).unwrap()))
        .collect();
    let best = entropies
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap()
        .0;
    assert_eq!(scan[best], 1.0, "{entropies:?}");
}

#[test]
fn concentrated_fits_have_negative_entropy() {
    let samples = draws(&[40.0, 60.0, 30.0], 2000, 4);
    let report = fit_dirichlet(&samples, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
    assert!(report.entropy() < 0.0);
}

#[test]
fn floored_one_hot_columns_reach_a_stationary_point() {
    // one-hot columns lifted by a 1e-10 floor, as produced by confident models
    let m = 9;
    let floor = 1e-10;
    let columns: Vec<Vec<f64>> = (0..40)
        .map(|i| {
            let mut col = vec![floor; m];
            col[(i * i) % m] = 1.0;
            let total: f64 = col.iter().sum();
            col.iter().map(|p| p / total).collect()
        })
        .collect();
    let report = fit_dirichlet(&columns, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
    assert!(report.converged);
    let alpha = report.params.alpha();
    let psi_total = digamma(report.params.concentration()).unwrap();
    for j in 0..m {
        let mean_log = columns.iter().map(|c| c[j].ln()).sum::<f64>() / columns.len() as f64;
        let residual = digamma(alpha[j]).unwrap() - psi_total - mean_log;
        assert!(
            residual.abs() < 1e-4 * mean_log.abs(),
            "component {j}: {residual}"
        );
    }
}
