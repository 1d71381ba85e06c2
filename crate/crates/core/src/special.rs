//! Digamma, trigamma, inverse digamma and log-gamma.
//!
//! Arguments below 10 are moved up with the recurrences
//! `psi(x) = psi(x + 1) - 1/x` and `lnG(x) = lnG(x + 1) - ln x`; from there
//! the asymptotic Stirling-type series are accurate to well under 1e-15.

use crate::error::{Error, Result};
use alloc::format;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SHIFT: f64 = 10.0;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} requires a finite positive argument, got {x}"
        )))
    }
}

/// The digamma function `psi(x) = d/dx ln Gamma(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive("digamma", x)?;
    Ok(digamma_unchecked(x))
}

pub(crate) fn digamma_unchecked(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < SHIFT {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let r = 1.0 / x;
    let r2 = r * r;
    // Bernoulli terms B_2k / (2k x^2k), k = 1..7
    let series = r2
        * (1.0 / 12.0
            - r2 * (1.0 / 120.0
                - r2 * (1.0 / 252.0
                    - r2 * (1.0 / 240.0
                        - r2 * (1.0 / 132.0 - r2 * (691.0 / 32760.0 - r2 / 12.0))))));
    acc + (libm::log(x) - 0.5 * r - series)
}

/// The trigamma function `psi'(x)` for `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive("trigamma", x)?;
    Ok(trigamma_unchecked(x))
}

pub(crate) fn trigamma_unchecked(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < SHIFT {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let r = 1.0 / x;
    let r2 = r * r;
    let series = r
        + 0.5 * r2
        + r * r2
            * (1.0 / 6.0
                - r2 * (1.0 / 30.0
                    - r2 * (1.0 / 42.0
                        - r2 * (1.0 / 30.0 - r2 * (5.0 / 66.0 - r2 * (691.0 / 2730.0))))));
    acc + series
}

/// Solves `psi(x) = y` for `x > 0` by Newton's method.
///
/// Starts from `exp(y) + 1/2` when `y >= -2.22` and from `-1/(y + gamma)`
/// otherwise. `psi` is a bijection from `(0, inf)` onto the reals, so every
/// finite `y` has a solution; non-finite input yields NaN.
pub fn inverse_digamma(y: f64) -> f64 {
    if !y.is_finite() {
        return f64::NAN;
    }
    let mut x = if y >= -2.22 {
        libm::exp(y) + 0.5
    } else {
        -1.0 / (y + EULER_GAMMA)
    };
    for _ in 0..64 {
        let residual = digamma_unchecked(x) - y;
        let step = residual / trigamma_unchecked(x);
        let mut next = x - step;
        if next <= 0.0 {
            next = 0.5 * x;
        }
        let done = (next - x).abs() <= 1e-15 * x;
        x = next;
        if done {
            break;
        }
    }
    x
}

/// `ln Gamma(x)` for `x > 0`.
pub fn lgamma(x: f64) -> Result<f64> {
    check_positive("lgamma", x)?;
    Ok(lgamma_unchecked(x))
}

pub(crate) fn lgamma_unchecked(mut x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    let mut shift_product = 1.0;
    while x < SHIFT {
        shift_product *= x;
        x += 1.0;
    }
    let r = 1.0 / x;
    let r2 = r * r;
    let series = r
        * (1.0 / 12.0
            - r2 * (1.0 / 360.0
                - r2 * (1.0 / 1260.0
                    - r2 * (1.0 / 1680.0
                        - r2 * (1.0 / 1188.0 - r2 * (691.0 / 360_360.0 - r2 / 156.0))))));
    let ln_x = libm::log(x);
    let head = libm::fma(x - 0.5, ln_x, -x);
    let ln_shift = if shift_product == 1.0 {
        0.0
    } else {
        libm::log(shift_product)
    };
    head + HALF_LN_2PI + series - ln_shift
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digamma_recurrence_and_known_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        let psi2 = digamma(2.0).unwrap();
        assert!((psi2 - 0.422_784_335_098_467_1).abs() < 1e-15);
        for &x in &[0.3, 1.7, 9.5, 10.0, 42.0] {
            let lhs = digamma(x + 1.0).unwrap();
            let rhs = digamma(x).unwrap() + 1.0 / x;
            assert!((lhs - rhs).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(digamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(digamma(-1.5), Err(Error::Domain(_))));
        assert!(matches!(lgamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(trigamma(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn lgamma_factorials() {
        assert_eq!(lgamma(1.0).unwrap(), 0.0);
        assert!((lgamma(2.0).unwrap()).abs() < 1e-15);
        assert!((lgamma(4.0).unwrap() - libm::log(6.0)).abs() < 1e-14);
        assert!((lgamma(0.5).unwrap() - 0.572_364_942_924_700_1).abs() < 1e-14);
    }

    #[test]
    fn trigamma_matches_difference_quotient() {
        for &x in &[0.05, 0.9, 3.3, 25.0] {
            let h = 1e-5 * x;
            let fd = (digamma_unchecked(x + h) - digamma_unchecked(x - h)) / (2.0 * h);
            let tg = trigamma(x).unwrap();
            assert!(
                (fd - tg).abs() < 1e-6 * tg.max(1.0),
                "x = {x}: {fd} vs {tg}"
            );
        }
    }

    #[test]
    fn inverse_digamma_spot_values() {
        assert!((inverse_digamma(digamma(3.0).unwrap()) - 3.0).abs() < 1e-8);
        assert!((inverse_digamma(-0.577_215_664_9) - 1.0).abs() < 1e-8);
        for &x in &[0.01, 0.1, 1.0, 10.0, 1000.0] {
            let back = inverse_digamma(digamma(x).unwrap());
            assert!((back - x).abs() <= 1e-8, "x = {x}, got {back}");
        }
        assert!(inverse_digamma(f64::NAN).is_nan());
    }
}
